//! One line per acceptance criterion. Every tolerance is exact: a criterion
//! passes only when its residuals are the zero object.
//!
//! Criterion 4 asks for α|_{z=1} = 0 when n ≡ 2 (mod 4). There α has a pole
//! at z = 1 (its reciprocal vanishes there), so the criterion cannot hold as
//! stated; the test prints it as FAIL and pins the failure to exactly those n.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use manin_denef::algebra::{int, rat, RatFunc, VarId};
use manin_denef::campaign::{alpha_at_z1, random_order_case, random_series, random_triple, representation_roundtrip, run_campaign, CampaignConfig, Status, Suite};
use manin_denef::curve::EndoTable;
use manin_denef::encoder::{encode_system, parse_diophantine, parse_formula, random_formula, render_formula, Dialect, Format};
use manin_denef::places::{self, check_alpha_a_relation, derivative_order_check, ord_at, Order, OrderRule, Place};
use manin_denef::series::{diff1_residual, diff2_residual, solve_diff1, solve_diff2};
use manin_denef::uniform;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(bad: Vec<String>, ok: impl Into<String>) -> Verdict {
    if bad.is_empty() {
        Verdict { pass: true, detail: ok.into() }
    } else {
        Verdict { pass: false, detail: bad.join("; ") }
    }
}

fn nonzero(max: i64) -> impl Iterator<Item = i64> {
    (-max..=max).filter(|n| *n != 0)
}

fn t() -> &'static EndoTable {
    EndoTable::generic()
}

fn liz() -> Verdict {
    let bad = nonzero(12)
        .filter_map(|n| {
            let p = t().get(n).unwrap();
            let r = &places::compute_a(&p.x, &p.y).unwrap() - &RatFunc::integer(n);
            (!r.is_zero()).then(|| format!("n = {n}: {r}"))
        })
        .collect();
    verdict(bad, "A - n = 0 for 1 <= |n| <= 12")
}

fn wellknown() -> Verdict {
    let bad = (1..=12).filter_map(|n| {
        let r = t().check_wellknown(n).unwrap();
        (!r.is_zero()).then(|| format!("n = {n}: {r}"))
    });
    verdict(bad.collect(), "dx_n/dz - n*y_n = 0 for 1 <= n <= 12")
}

fn group_law_orders() -> Verdict {
    let bad = (1..=16).filter_map(|n| {
        let want = [-2, 1, 0, 1][(n % 4) as usize];
        let got = ord_at(&(&t().get(n).unwrap().x - &RatFunc::one()), &Place::z_minus_one());
        (got != Order::Finite(want)).then(|| format!("n = {n}: ord {got}, want {want}"))
    });
    verdict(bad.collect(), "ord_(z-1)(x_n - 1) in {1, -2, 0} by n mod 4, 1 <= n <= 16")
}

/// Returns the verdict and the n where α|_{z=1} is a pole.
fn group_law_alpha() -> (Verdict, Vec<i64>, bool) {
    let mut bad = Vec::new();
    let mut poles = Vec::new();
    let mut reciprocal_ok = true;
    for n in 1..=12 {
        let p = t().get(n).unwrap();
        let want = match n % 4 {
            0 => rat(-n, 2),
            2 => int(0),
            _ => int(n),
        };
        match alpha_at_z1(&p.x, &p.y).unwrap() {
            Some(a) if a == RatFunc::constant(want.clone()) => {}
            Some(a) => bad.push(format!("n = {n}: {a}")),
            None => {
                poles.push(n);
                bad.push(format!("n = {n}: pole"));
            }
        }
        // 1/α at z = 1 is ord/n in every case, 0 for the poles
        let inv = places::compute_alpha(&p.x, &p.y).unwrap().recip().unwrap();
        let ord = [-2, 1, 0, 1][(n % 4) as usize];
        reciprocal_ok &= inv.evaluate_partial(&VarId::z(), &int(1)) == Some(RatFunc::constant(rat(ord, n)));
    }
    let mut v = verdict(bad, "alpha|_(z=1) = n, -n/2, 0 for n <= 12");
    if !v.pass {
        v.detail = format!(
            "alpha|_(z=1) has a pole for n = {poles:?}, so the stated value 0 is unattainable; \
             n and -n/2 hold elsewhere; 1/alpha|_(z=1) = ord/n holds for all n <= 12: {reciprocal_ok}"
        );
    }
    (v, poles, reciprocal_ok)
}

fn sofia() -> Verdict {
    let bad = (1..=15).step_by(2).filter_map(|n| {
        let p = t().get(n).unwrap();
        let v = check_alpha_a_relation(&p.x, &p.y).unwrap();
        let ok = v.holds && v.alpha == Some(int(n)) && v.a_value == Some(int(n)) && v.ord == Order::Finite(1);
        (!ok).then(|| format!("n = {n}: {v:?}"))
    });
    verdict(bad.collect(), "alpha = A = n at z = 1, delta = -2 for odd n <= 15")
}

fn product_formulas() -> Verdict {
    let mut cases = Vec::new();
    for n in 2..=8 {
        for k in 1..n {
            cases.push((n, k));
        }
    }
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|&(n, k)| {
            let r = t().check_product_formulas(n, k).unwrap();
            (!r.all_zero()).then(|| format!("(n, k) = ({n}, {k})"))
        })
        .collect();
    verdict(bad, format!("{} pairs, both formulas, generic and delta = -2", cases.len()))
}

fn quotient() -> Verdict {
    let mut bad = Vec::new();
    for n in 1..=10 {
        let e = t().check_quotienttilde(n, 8).unwrap();
        if e.valuation() != 0 || e.coeff(0) != RatFunc::one() {
            bad.push(format!("n = {n}: valuation {}, constant {}", e.valuation(), e.coeff(0)));
        }
    }
    // e_2 = 1 / (1 + w (delta + 2)) with w = z/(z-1)^2
    let e2 = t().check_quotienttilde(2, 8).unwrap();
    let w: RatFunc = "-z/(z-1)^2".parse().unwrap();
    for k in 0..8 {
        if e2.coeff(k) != w.pow(k as i32) {
            bad.push(format!("e_2 coefficient {k}: {}", e2.coeff(k)));
        }
    }
    verdict(bad, "valuation 0, constant 1 for n <= 10 to order 8; e_2 matches term by term")
}

fn poly() -> Verdict {
    let bad = nonzero(16).filter_map(|n| t().specialize_tilde(n).err().map(|e| format!("n = {n}: {e}")));
    verdict(bad.collect(), "delta = -2 specializes for 1 <= |n| <= 16")
}

fn representation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let bad = (0..100).filter_map(|i| {
        let rep = random_triple(&mut rng, 8, 32);
        let r = representation_roundtrip(&rep).unwrap();
        (r != "0").then(|| format!("#{i}: {r}"))
    });
    verdict(bad.collect(), "100 triples, deg h <= 8, trunc 32")
}

fn central0() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let bad = (0..100).filter_map(|i| {
        let b = random_series(&mut rng, 32);
        let g = solve_diff1(&b).unwrap();
        let s = solve_diff2(&b).unwrap();
        let ok = diff1_residual(&g, &b).truncate(32).is_zero() && diff2_residual(&s, &b).truncate(s.g.trunc_order()).is_zero();
        (!ok).then(|| format!("#{i}"))
    });
    verdict(bad.collect(), "100 inputs, both equations")
}

fn properties() -> Verdict {
    let mut bad: Vec<String> = uniform::check_functional_equations()
        .unwrap()
        .into_iter()
        .chain(uniform::check_oddness().unwrap())
        .filter(|(_, r)| !r.is_zero())
        .map(|(name, r)| format!("{name}: {r}"))
        .collect();
    let inj = uniform::check_injectivity().unwrap();
    if !(inj.factorization_ok && inj.forces_equal) {
        bad.push(format!("injectivity: {inj:?}"));
    }
    verdict(bad, "5 functional equations, 3 oddness identities, injectivity")
}

fn lawtransfer() -> Verdict {
    let r = uniform::check_group_transfer().unwrap();
    let bad = if r.all_zero() && r.inverse_is_infinity { vec![] } else { vec![format!("{r:?}")] };
    verdict(bad, "generic, doubling and inverse branches in Q(t1, t2)")
}

fn lem_g() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let bad = (0..50).filter_map(|i| {
        let rep = random_triple(&mut rng, 4, 32);
        let r = uniform::check_g_prime(&rep).unwrap();
        (!r.is_zero()).then(|| format!("#{i}: {r}"))
    });
    verdict(bad.collect(), "50 triples, deg h <= 4")
}

fn uniformization() -> Verdict {
    let bad: Vec<String> = [1i64, 3, 5, 7, 9]
        .par_iter()
        .filter_map(|&n| {
            let u = uniform::check_uniformization_endo(n);
            let w = uniform::integrality_witness(n);
            match (u, w) {
                (Ok(u), Ok(w)) if u.x_identity_ok && u.y_identity_ok && w == int(n) => None,
                (u, w) => Some(format!("n = {n}: {u:?} {w:?}")),
            }
        })
        .collect();
    verdict(bad, "n in {1, 3, 5, 7, 9}, beta = n")
}

fn mariac() -> Verdict {
    let ns: Vec<i64> = nonzero(12).collect();
    let bad: Vec<String> = ns
        .par_iter()
        .filter_map(|&n| {
            let r = t().check_mariac(n).unwrap();
            (!r.is_zero()).then(|| format!("n = {n}"))
        })
        .collect();
    verdict(bad, "1 <= |n| <= 12")
}

fn alla() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut bad = Vec::new();
    let mut rules = BTreeSet::new();
    for i in 0..500 {
        let (g, p) = random_order_case(&mut rng);
        match derivative_order_check(&g, &p) {
            Ok(r) => {
                rules.insert(format!("{:?}", r.rule_verified));
            }
            Err(e) => bad.push(format!("#{i}: {e}")),
        }
    }
    for r in [OrderRule::Decrement, OrderRule::NonDecrease, OrderRule::NonNegative] {
        if !rules.contains(&format!("{r:?}")) {
            bad.push(format!("case {r:?} never exercised"));
        }
    }
    verdict(bad, "500 functions, all three cases exercised")
}

fn encoder() -> Verdict {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut bad = Vec::new();
    for name in ["single", "pythagoras", "sum_product"] {
        let sys = parse_diophantine(&std::fs::read_to_string(golden.join(format!("{name}.dio"))).unwrap()).unwrap();
        for d in Dialect::ALL {
            let f = encode_system(&sys, d);
            let got = render_formula(&f, Format::Json);
            if std::fs::read_to_string(golden.join(format!("{name}.{d}.json"))).ok().as_deref() != Some(got.as_str()) {
                bad.push(format!("{name}.{d}: golden mismatch"));
            }
            if !f.dialect_violations(d).is_empty() {
                bad.push(format!("{name}.{d}: {:?}", f.dialect_violations(d)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for i in 0..200 {
        let f = random_formula(&mut rng);
        if parse_formula(&render_formula(&f, Format::Json)).ok() != Some(f) {
            bad.push(format!("roundtrip #{i}"));
        }
    }
    verdict(bad, "9 golden files, 200 roundtrips, dialect invariants")
}

fn mutation() -> Verdict {
    let cfg = CampaignConfig { suites: vec![Suite::Curve, Suite::Uniformization], max_n: 4, trunc: 16, seed: 0, tamper: true };
    let certs = run_campaign(&cfg).unwrap();
    let fails = certs.iter().filter(|c| c.status == Status::Fail).count();
    let bad = if fails == 0 { vec!["tampered law went unnoticed".into()] } else { vec![] };
    verdict(bad, format!("{fails} of {} checks fail with one sign flipped", certs.len()))
}

// Runs without the libtest harness so the report lines are never captured.
fn main() {
    let start = Instant::now();
    // memoize the chain once so the parallel criteria share it
    for n in 1..=16 {
        t().get(n).unwrap();
        t().get(-n).unwrap();
    }
    println!("multiples up to |n| = 16 built in {:.1}s", start.elapsed().as_secs_f64());
    let timed = |f: fn() -> Verdict| move || {
        let s = Instant::now();
        let mut v = f();
        v.detail = format!("{} [{:.1}s]", v.detail, s.elapsed().as_secs_f64());
        v
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + Send + Sync>)> = vec![
        ("Liz", Box::new(timed(liz))),
        ("wellknown", Box::new(timed(wellknown))),
        ("groupLaw orders", Box::new(timed(group_law_orders))),
        ("groupLaw alpha", Box::new(|| group_law_alpha().0)),
        ("Sofia", Box::new(timed(sofia))),
        ("productformula", Box::new(timed(product_formulas))),
        ("quotienttilde", Box::new(timed(quotient))),
        ("Poly", Box::new(timed(poly))),
        ("representation", Box::new(timed(representation))),
        ("central0", Box::new(timed(central0))),
        ("properties", Box::new(timed(properties))),
        ("lawtransfer", Box::new(timed(lawtransfer))),
        ("lemG", Box::new(timed(lem_g))),
        ("uniform + intvallem", Box::new(timed(uniformization))),
        ("mariac", Box::new(timed(mariac))),
        ("Alla", Box::new(timed(alla))),
        ("encoder", Box::new(timed(encoder))),
        ("mutation", Box::new(timed(mutation))),
    ];
    let verdicts: Vec<Verdict> = criteria.par_iter().map(|(_, f)| f()).collect();
    for (i, ((name, _), v)) in criteria.iter().zip(&verdicts).enumerate() {
        println!("{} {:>2} {name}: {}", if v.pass { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());

    let failed: Vec<usize> = verdicts.iter().enumerate().filter(|(_, v)| !v.pass).map(|(i, _)| i + 1).collect();
    assert_eq!(failed, [4], "unexpected failing criteria");
    // the one known failure is exactly the poles at n ≡ 2 (mod 4)
    let (_, poles, reciprocal_ok) = group_law_alpha();
    assert_eq!(poles, [2, 6, 10]);
    assert!(reciprocal_ok);
}
