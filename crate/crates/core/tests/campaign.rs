use std::collections::BTreeSet;

use manin_denef::campaign::{lemma_label, report, run_campaign, CampaignConfig, Certificate, Status, Suite};

fn config(suites: &[Suite], max_n: i64) -> CampaignConfig {
    CampaignConfig { suites: suites.to_vec(), max_n, trunc: 16, seed: 3, tamper: false }
}

fn labels(certs: &[Certificate]) -> BTreeSet<&'static str> {
    certs.iter().map(|c| lemma_label(&c.check_id)).collect()
}

#[test]
fn curve_suite_passes_for_small_n() {
    let certs = run_campaign(&config(&[Suite::Curve], 4)).unwrap();
    assert!(certs.iter().all(|c| c.status == Status::Pass), "{}", report(&certs));
    let want: BTreeSet<_> = ["Liz", "wellknown", "productformula", "mariac", "quotienttilde", "Poly", "MD"].into();
    assert_eq!(labels(&certs), want);
    assert!(certs.iter().all(|c| c.residual == "0"));
}

#[test]
fn every_check_family_is_reachable() {
    let certs = run_campaign(&config(&Suite::ALL, 5)).unwrap();
    let want: BTreeSet<_> = [
        "Liz", "wellknown", "productformula", "quotienttilde", "Poly", "groupLaw", "Sofia", "alphaA", "Alla",
        "central0", "central", "properties", "lawtransfer", "lemG", "uniform", "intvallem", "mariac", "MD", "encoder",
    ]
    .into();
    assert_eq!(labels(&certs), want);
    assert!(!labels(&certs).contains("other"));
    let ids: Vec<&str> = certs.iter().map(|c| c.check_id.as_str()).collect();
    for prefix in ["lemma.grouplaw.ord", "lemma.grouplaw.alpha", "lemma.grouplaw.inv_alpha", "lemma.properties.injectivity",
        "lemma.properties.oddness", "lemma.properties.functional", "lemma.central0.first", "lemma.central0.second",
        "encoder.invariants", "encoder.roundtrip"] {
        assert!(ids.iter().any(|id| id.starts_with(prefix)), "no {prefix} check");
    }
    assert!(certs.iter().all(|c| c.status != Status::Fail), "{}", report(&certs));
    // α has a pole at z = 1 exactly for n ≡ 2 (mod 4)
    let undefined: Vec<&str> = certs.iter().filter(|c| c.status == Status::Undefined).map(|c| c.check_id.as_str()).collect();
    assert_eq!(undefined, ["lemma.alphaa.n=2", "lemma.grouplaw.alpha.n=2"]);
}

#[test]
fn same_seed_same_certificates() {
    let cfg = config(&[Suite::Orders, Suite::Series, Suite::Encoder], 4);
    let a: Vec<_> = run_campaign(&cfg).unwrap().iter().map(Certificate::untimed).collect();
    let b: Vec<_> = run_campaign(&cfg).unwrap().iter().map(Certificate::untimed).collect();
    assert_eq!(a, b);
    let other = run_campaign(&CampaignConfig { seed: 4, ..cfg }).unwrap();
    assert_ne!(a.iter().map(|c| &c.params).collect::<Vec<_>>(), other.iter().map(|c| &c.params).collect::<Vec<_>>());
}

#[test]
fn certificates_are_sorted_and_consistent() {
    let certs = run_campaign(&config(&[Suite::Curve, Suite::Series], 3)).unwrap();
    let ids: Vec<&str> = certs.iter().map(|c| c.check_id.as_str()).collect();
    let n9 = ids.iter().position(|i| *i == "lemma.central.i=9").unwrap();
    let n10 = ids.iter().position(|i| *i == "lemma.central.i=10").unwrap();
    assert!(ids.iter().position(|i| *i == "lemma.liz.n=-3").unwrap() < ids.iter().position(|i| *i == "lemma.liz.n=-1").unwrap());
    assert!(n9 < n10);
    for c in &certs {
        assert_eq!(c.status == Status::Pass, c.residual == "0", "{}", c.check_id);
    }
}

#[test]
fn tampered_law_is_caught() {
    let cfg = CampaignConfig { tamper: true, ..config(&[Suite::Curve, Suite::Uniformization], 4) };
    let certs = run_campaign(&cfg).unwrap();
    let failing: BTreeSet<_> = certs.iter().filter(|c| c.status == Status::Fail).map(|c| lemma_label(&c.check_id)).collect();
    assert!(failing.contains("Liz") && failing.contains("lawtransfer"), "{failing:?}");
    assert!(report(&certs).contains("failing checks:"));
}

#[test]
fn empty_selection_and_bad_configs() {
    assert!(run_campaign(&config(&[], 12)).unwrap().is_empty());
    assert_eq!(report(&[]).lines().count(), 1);
    assert!(run_campaign(&config(&[], 0)).is_err());
    assert!(run_campaign(&config(&[], 17)).is_err());
    assert!(run_campaign(&CampaignConfig { trunc: 7, ..config(&[], 4) }).is_err());
    assert!(Suite::parse_list("curve,bogus").is_err());
    assert_eq!(Suite::parse_list("series, curve,series").unwrap(), [Suite::Curve, Suite::Series]);
    assert!(CampaignConfig { max_n: 14, ..config(&[], 4) }.warnings().len() == 1);
}

#[test]
fn report_lists_failures_first() {
    let cert = |id: &str, status| Certificate {
        check_id: id.into(),
        params: Default::default(),
        status,
        residual: if status == Status::Pass { "0".into() } else { "z".into() },
        elapsed_ms: 1,
    };
    let certs = [cert("lemma.liz.n=1", Status::Pass), cert("lemma.wellknown.n=1", Status::Fail), cert("lemma.alla.i=0", Status::Pass)];
    let r = report(&certs);
    let rows: Vec<&str> = r.lines().skip(1).take(3).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(rows, ["wellknown", "Alla", "Liz"]);
    assert!(r.contains("lemma.wellknown.n=1: z"));
}
