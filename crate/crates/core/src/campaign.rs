//! Verification campaigns: every check as an independent job producing a
//! certificate, run concurrently and merged in check-id order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{int, rat, MPoly, RatFunc, Rational, VarId};
use crate::curve::{Curve, EndoTable};
use crate::encoder::{self, Dialect, Format};
use crate::error::{Error, Result};
use crate::places::{self, Order, Place};
use crate::series::{self, RepTriple, TruncSeries};
use crate::uniform;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Curve,
    Orders,
    Series,
    Uniformization,
    Encoder,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Curve, Suite::Orders, Suite::Series, Suite::Uniformization, Suite::Encoder];

    /// `all`, the empty string, or a comma-separated list.
    pub fn parse_list(s: &str) -> Result<Vec<Suite>> {
        if s.trim() == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        let mut out: Vec<Suite> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(str::parse).collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "curve" => Ok(Suite::Curve),
            "orders" => Ok(Suite::Orders),
            "series" => Ok(Suite::Series),
            "uniformization" => Ok(Suite::Uniformization),
            "encoder" => Ok(Suite::Encoder),
            _ => Err(Error::Config(format!("unknown suite `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub suites: Vec<Suite>,
    pub max_n: i64,
    pub trunc: i64,
    pub seed: u64,
    /// Run against a curve whose addition law has one sign flipped.
    pub tamper: bool,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig { suites: Suite::ALL.to_vec(), max_n: 12, trunc: 32, seed: 0, tamper: false }
    }
}

/// Largest supported `max_n`; above the default the degrees grow like n².
pub const MAX_N_LIMIT: i64 = 16;

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_n < 1 || self.max_n > MAX_N_LIMIT {
            return Err(Error::Config(format!("max_n must be in 1..={MAX_N_LIMIT}, got {}", self.max_n)));
        }
        if self.trunc < 8 {
            return Err(Error::Config(format!("trunc must be at least 8, got {}", self.trunc)));
        }
        Ok(())
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.max_n > 12 {
            w.push(format!("max_n = {} is above the default 12; expect long runtimes", self.max_n));
        }
        w
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Undefined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub check_id: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    /// Canonical string of the residual, `"0"` exactly when the check passes.
    pub residual: String,
    pub elapsed_ms: u64,
}

impl Certificate {
    /// The certificate without its timing, for determinism comparisons.
    pub fn untimed(&self) -> Certificate {
        Certificate { elapsed_ms: 0, ..self.clone() }
    }
}

/// Status and residual of one check.
pub struct Outcome {
    pub status: Status,
    pub residual: String,
}

impl Outcome {
    fn zero_if(residual: String) -> Outcome {
        let status = if residual == "0" { Status::Pass } else { Status::Fail };
        Outcome { status, residual }
    }

    fn ratfunc(r: &RatFunc) -> Outcome {
        Outcome::zero_if(r.to_string())
    }

    fn ratfuncs(rs: &[&RatFunc]) -> Outcome {
        if rs.iter().all(|r| r.is_zero()) {
            return Outcome::zero_if("0".into());
        }
        Outcome::zero_if(format!("[{}]", rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ")))
    }

    fn series(s: &TruncSeries<Rational>) -> Outcome {
        Outcome::zero_if(if s.is_zero() { "0".into() } else { s.to_string() })
    }

    fn rational(r: &Rational) -> Outcome {
        Outcome::zero_if(r.to_string())
    }

    fn undefined(why: impl Into<String>) -> Outcome {
        Outcome { status: Status::Undefined, residual: why.into() }
    }

    fn failed(e: &Error) -> Outcome {
        Outcome { status: Status::Fail, residual: format!("error: {e}") }
    }
}

type Run = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

struct Job {
    id: String,
    params: BTreeMap<String, String>,
    run: Run,
}

fn job(id: String, params: &[(&str, String)], run: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Job {
    Job { id, params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(), run: Box::new(run) }
}

/// Compares check ids with digit runs read as (signed) numbers, so `n=9` sorts before `n=10`.
pub fn natural_cmp(a: &str, b: &str) -> std::cmp::Ordering {
    fn key(s: &str) -> Vec<(String, i128)> {
        let mut out = Vec::new();
        let mut text = String::new();
        let cs: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < cs.len() {
            let neg = cs[i] == '-' && cs.get(i + 1).is_some_and(|c| c.is_ascii_digit()) && text.ends_with('=');
            if cs[i].is_ascii_digit() || neg {
                let start = i;
                i += 1;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let num: String = cs[start..i].iter().collect();
                out.push((std::mem::take(&mut text), num.parse().unwrap_or(i128::MAX)));
            } else {
                text.push(cs[i]);
                i += 1;
            }
        }
        out.push((text, i128::MIN));
        out
    }
    key(a).cmp(&key(b))
}

fn tables(cfg: &CampaignConfig) -> Arc<EndoTable> {
    if cfg.tamper {
        Arc::new(EndoTable::new(Curve::generic().tampered()))
    } else {
        Arc::new(EndoTable::new(Curve::generic()))
    }
}

/// Runs every selected suite. Independent checks run concurrently; the
/// result is sorted by check id.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<Vec<Certificate>> {
    cfg.validate()?;
    let table = tables(cfg);
    let mut jobs = Vec::new();
    for suite in &cfg.suites {
        // one stream per suite, so a suite's inputs do not depend on the selection
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(8).wrapping_add(*suite as u64));
        match suite {
            Suite::Curve => curve_jobs(cfg, &table, &mut jobs),
            Suite::Orders => order_jobs(cfg, &table, &mut rng, &mut jobs),
            Suite::Series => series_jobs(cfg, &mut rng, &mut jobs),
            Suite::Uniformization => uniform_jobs(cfg, &table, &mut rng, &mut jobs),
            Suite::Encoder => encoder_jobs(&mut rng, &mut jobs),
        }
    }
    if cfg.suites.iter().any(|s| matches!(s, Suite::Curve | Suite::Orders | Suite::Uniformization)) {
        // Build the chain once up front so concurrent jobs find it memoized.
        let top = cfg.max_n.max(2 * cfg.max_n.min(PRODUCT_MAX_N));
        for n in 1..=top {
            let _ = table.get(n);
        }
    }
    let mut certs: Vec<Certificate> = jobs
        .into_par_iter()
        .map(|j| {
            let start = Instant::now();
            let out = (j.run)().unwrap_or_else(|e| Outcome::failed(&e));
            Certificate {
                check_id: j.id,
                params: j.params,
                status: out.status,
                residual: out.residual,
                elapsed_ms: start.elapsed().as_millis() as u64,
            }
        })
        .collect();
    certs.sort_by(|a, b| natural_cmp(&a.check_id, &b.check_id));
    Ok(certs)
}

/// The product and duplication formulas need `x_{2n}`, so `n` stops here.
pub const PRODUCT_MAX_N: i64 = 8;
/// Quotient expansions are checked for `n` up to this bound, to this order.
pub const QUOTIENT_MAX_N: i64 = 10;
pub const QUOTIENT_ORDER: i64 = 8;
/// Largest odd `n` for the uniformization identities.
pub const UNIFORM_MAX_N: i64 = 9;

fn nonzero_range(max_n: i64) -> impl Iterator<Item = i64> {
    (-max_n..=max_n).filter(|n| *n != 0)
}

fn curve_jobs(cfg: &CampaignConfig, table: &Arc<EndoTable>, jobs: &mut Vec<Job>) {
    for n in nonzero_range(cfg.max_n) {
        let t = table.clone();
        jobs.push(job(format!("lemma.liz.n={n}"), &[("n", n.to_string())], move || {
            let p = t.get(n)?;
            Ok(Outcome::ratfunc(&(&places::compute_a(&p.x, &p.y)? - &RatFunc::integer(n))))
        }));
        let t = table.clone();
        jobs.push(job(format!("eq.mariac.n={n}"), &[("n", n.to_string())], move || Ok(Outcome::ratfunc(&t.check_mariac(n)?))));
        let t = table.clone();
        jobs.push(job(format!("lemma.poly.n={n}"), &[("n", n.to_string())], move || {
            t.specialize_tilde(n)?;
            Ok(Outcome::zero_if("0".into()))
        }));
        let t = table.clone();
        jobs.push(job(format!("eq.md.n={n}"), &[("n", n.to_string())], move || Ok(Outcome::ratfunc(&t.check_md(n)?))));
    }
    for n in 1..=cfg.max_n {
        let t = table.clone();
        jobs.push(job(format!("lemma.wellknown.n={n}"), &[("n", n.to_string())], move || {
            Ok(Outcome::ratfunc(&t.check_wellknown(n)?))
        }));
    }
    for n in 2..=cfg.max_n.min(PRODUCT_MAX_N) {
        for k in 1..n {
            let t = table.clone();
            jobs.push(job(
                format!("lemma.productformula.n={n}.k={k}"),
                &[("n", n.to_string()), ("k", k.to_string())],
                move || {
                    let r = t.check_product_formulas(n, k)?;
                    Ok(Outcome::ratfuncs(&[&r.eq6, &r.eq7, &r.eq6_tilde, &r.eq7_tilde]))
                },
            ));
        }
    }
    for n in 1..=cfg.max_n.min(QUOTIENT_MAX_N) {
        let t = table.clone();
        let params = [("n", n.to_string()), ("order", QUOTIENT_ORDER.to_string())];
        jobs.push(job(format!("lemma.quotienttilde.n={n}"), &params, move || {
            let s = t.check_quotienttilde(n, QUOTIENT_ORDER)?;
            if s.valuation() != 0 {
                return Ok(Outcome::zero_if(format!("valuation {}", s.valuation())));
            }
            Ok(Outcome::ratfunc(&(&s.coeff(0) - &RatFunc::one())))
        }));
    }
}

/// `ord_{z−1}(x_n − 1)` predicted by the parity of `n`.
pub fn expected_order(n: i64) -> i64 {
    match n.rem_euclid(4) {
        1 | 3 => 1,
        0 => -2,
        _ => 0,
    }
}

/// `α|_{z=1}` predicted by the parity of `n`: `n`, `−n/2`, or `0`.
pub fn expected_alpha(n: i64) -> Rational {
    match n.rem_euclid(4) {
        1 | 3 => int(n),
        0 => rat(-n, 2),
        _ => int(0),
    }
}

/// `α` after `z = 1` with `δ` left symbolic; `None` at a pole.
pub fn alpha_at_z1(x: &RatFunc, y: &RatFunc) -> Result<Option<RatFunc>> {
    Ok(places::compute_alpha(x, y)?.evaluate_partial(&VarId::z(), &int(1)))
}

fn order_jobs(cfg: &CampaignConfig, table: &Arc<EndoTable>, rng: &mut ChaCha8Rng, jobs: &mut Vec<Job>) {
    for n in 1..=cfg.max_n {
        let p = [("n", n.to_string())];
        let t = table.clone();
        jobs.push(job(format!("lemma.grouplaw.ord.n={n}"), &p, move || {
            let x = &t.get(n)?.x;
            match places::ord_at(&(x - &RatFunc::one()), &Place::z_minus_one()) {
                Order::Finite(k) => Ok(Outcome::zero_if((k - expected_order(n)).to_string())),
                Order::Infinity => Ok(Outcome::zero_if("x_n = 1".into())),
            }
        }));
        let t = table.clone();
        jobs.push(job(format!("lemma.grouplaw.alpha.n={n}"), &p, move || {
            let e = t.get(n)?;
            match alpha_at_z1(&e.x, &e.y)? {
                Some(a) => Ok(Outcome::ratfunc(&(&a - &RatFunc::constant(expected_alpha(n))))),
                None => Ok(Outcome::undefined("pole at z = 1")),
            }
        }));
        let t = table.clone();
        jobs.push(job(format!("lemma.grouplaw.inv_alpha.n={n}"), &p, move || {
            // 1/α at z = 1 equals ord/n in every case
            let e = t.get(n)?;
            let inv = places::compute_alpha(&e.x, &e.y)?.recip()?;
            let want = RatFunc::constant(rat(expected_order(n), n));
            match inv.evaluate_partial(&VarId::z(), &int(1)) {
                Some(v) => Ok(Outcome::ratfunc(&(&v - &want))),
                None => Ok(Outcome::zero_if("pole at z = 1".into())),
            }
        }));
        let t = table.clone();
        jobs.push(job(format!("lemma.alphaa.n={n}"), &p, move || {
            let e = t.get(n)?;
            let v = places::check_alpha_a_relation(&e.x, &e.y)?;
            if v.alpha.is_none() {
                return Ok(Outcome::undefined("α undefined at the singular point"));
            }
            Ok(match (v.holds, v.residual) {
                (true, _) => Outcome::zero_if("0".into()),
                (false, Some(r)) if r != int(0) => Outcome::rational(&r),
                (false, _) => Outcome::zero_if(format!("side condition fails: ord = {}, α = {:?}, A = {:?}", v.ord, v.alpha, v.a_value)),
            })
        }));
        if n % 2 == 1 {
            let t = table.clone();
            jobs.push(job(format!("lemma.sofia.n={n}"), &p, move || {
                let e = t.get(n)?;
                match places::alpha_at_singular(&e.x, &e.y)? {
                    Some(a) => Ok(Outcome::rational(&(a - int(n)))),
                    None => Ok(Outcome::zero_if("α undefined at the singular point".into())),
                }
            }));
        }
    }
    for i in 0..100 {
        let (f, place) = random_order_case(rng);
        let params = [("i", i.to_string()), ("place", place.to_string()), ("f", f.to_string())];
        jobs.push(job(format!("lemma.alla.i={i}"), &params, move || match places::derivative_order_check(&f, &place) {
            Ok(_) => Ok(Outcome::zero_if("0".into())),
            Err(Error::Refuted(m)) => Ok(Outcome::zero_if(m)),
            Err(e) => Err(e),
        }));
    }
}

fn random_rational(rng: &mut impl Rng, span: i64) -> Rational {
    rat(rng.gen_range(-span..=span), rng.gen_range(1..=4))
}

fn random_poly_zd(rng: &mut impl Rng) -> MPoly {
    let terms = (0..rng.gen_range(1..=4))
        .map(|_| (vec![rng.gen_range(0..3), rng.gen_range(0..3)], random_rational(rng, 5)))
        .collect();
    MPoly::from_terms(&[VarId::z(), VarId::delta()], terms)
}

/// A random `g = c·p^e·u/w` in `z, δ` with a random place `p`.
pub fn random_order_case(rng: &mut impl Rng) -> (RatFunc, Place) {
    let place = match rng.gen_range(0..4) {
        0 => Place::z(),
        1 => Place::z_minus_one(),
        2 => Place::delta_plus_two(),
        _ => Place::quadratic(),
    };
    let e = rng.gen_range(-3..=3i32);
    let p = RatFunc::from(place.poly().clone()).pow(e);
    loop {
        let (u, w) = (random_poly_zd(rng), random_poly_zd(rng));
        if w.is_zero() {
            continue;
        }
        if let Ok(g) = RatFunc::new(&u, &w) {
            return (&g * &p, place);
        }
    }
}

/// A random power series in `z` of the given truncation, not exact.
pub fn random_series(rng: &mut impl Rng, trunc: i64) -> TruncSeries<Rational> {
    let coeffs = (0..trunc).map(|_| random_rational(rng, 9)).collect();
    TruncSeries::polynomial(VarId::z(), coeffs, trunc).with_exact(false)
}

/// A random `(β, γ, h)` with `h` an exact polynomial of degree at most `deg`.
pub fn random_triple(rng: &mut impl Rng, deg: usize, trunc: i64) -> RepTriple {
    let coeffs = (0..=deg).map(|_| random_rational(rng, 9)).collect();
    RepTriple {
        beta: random_rational(rng, 9),
        gamma: random_rational(rng, 9),
        h: TruncSeries::polynomial(VarId::z(), coeffs, trunc),
        exact: true,
    }
}

/// `H` assembled from `(β, γ, h)`, represented again; residual of `(β, γ, h)`
/// against the recovered triple, coefficient by coefficient.
pub fn representation_roundtrip(rep: &RepTriple) -> Result<String> {
    let big_h = series::assemble(&rep.beta, &rep.gamma, &rep.h);
    let back = series::represent(&big_h)?;
    let mut bad = Vec::new();
    if back.beta != rep.beta {
        bad.push(format!("β: {}", &back.beta - &rep.beta));
    }
    if back.gamma != rep.gamma {
        bad.push(format!("γ: {}", &back.gamma - &rep.gamma));
    }
    let common = back.h.trunc_order().min(rep.h.trunc_order());
    let dh = back.h.truncate(common).sub(&rep.h.truncate(common));
    if !dh.is_zero() {
        bad.push(format!("h: {dh}"));
    }
    let res = series::series_residual(&big_h, &back);
    if !res.is_zero() {
        bad.push(format!("H: {res}"));
    }
    Ok(if bad.is_empty() { "0".into() } else { bad.join("; ") })
}

fn series_jobs(cfg: &CampaignConfig, rng: &mut ChaCha8Rng, jobs: &mut Vec<Job>) {
    let trunc = cfg.trunc;
    for i in 0..100 {
        let rep = random_triple(rng, 8, trunc);
        jobs.push(job(format!("lemma.central.i={i}"), &[("i", i.to_string()), ("trunc", trunc.to_string())], move || {
            Ok(Outcome::zero_if(representation_roundtrip(&rep)?))
        }));
    }
    for i in 0..100 {
        let b = random_series(rng, trunc);
        let b2 = b.clone();
        let p = [("i", i.to_string()), ("trunc", trunc.to_string())];
        jobs.push(job(format!("lemma.central0.first.i={i}"), &p, move || {
            let g = series::solve_diff1(&b)?;
            Ok(Outcome::series(&series::diff1_residual(&g, &b).truncate(trunc)))
        }));
        jobs.push(job(format!("lemma.central0.second.i={i}"), &p, move || {
            let s = series::solve_diff2(&b2)?;
            Ok(Outcome::series(&series::diff2_residual(&s, &b2).truncate(s.g.trunc_order())))
        }));
    }
}

fn uniform_jobs(cfg: &CampaignConfig, table: &Arc<EndoTable>, rng: &mut ChaCha8Rng, jobs: &mut Vec<Job>) {
    for (i, name) in ["wp'^2 = f~(wp)", "wp'' = f~_z(wp)/2", "xi' = wp - 1", "wp = xi^2/4", "wp' = (wp - 1) xi / 2"]
        .into_iter()
        .enumerate()
    {
        jobs.push(job(format!("lemma.properties.functional.{i}"), &[("identity", name.into())], move || {
            let all = uniform::check_functional_equations()?;
            Ok(Outcome::ratfunc(&all[i].1))
        }));
    }
    for (i, name) in ["wp(1/t) = wp(t)", "wp'(1/t) = -wp'(t)", "xi(1/t) = -xi(t)"].into_iter().enumerate() {
        jobs.push(job(format!("lemma.properties.oddness.{i}"), &[("identity", name.into())], move || {
            Ok(Outcome::ratfunc(&uniform::check_oddness()?[i].1))
        }));
    }
    jobs.push(job("lemma.properties.injectivity".into(), &[], || {
        let r = uniform::check_injectivity()?;
        Ok(Outcome::zero_if(if r.factorization_ok && r.forces_equal { "0".into() } else { format!("{r:?}") }))
    }));
    let nodal = if cfg.tamper { Curve::nodal_plain().tampered() } else { Curve::nodal_plain() };
    jobs.push(job("lemma.lawtransfer".into(), &[("tampered", cfg.tamper.to_string())], move || {
        let r = uniform::check_group_transfer_on(&nodal)?;
        if r.all_zero() {
            return Ok(Outcome::zero_if("0".into()));
        }
        let mut out = Outcome::ratfuncs(&[&r.generic.0, &r.generic.1, &r.doubling.0, &r.doubling.1]);
        if !r.inverse_is_infinity {
            out = Outcome::zero_if(format!("{} inverse branch not at infinity", out.residual));
        }
        Ok(out)
    }));
    for i in 0..50 {
        let rep = random_triple(rng, 4, cfg.trunc);
        jobs.push(job(format!("lemma.lemg.i={i}"), &[("i", i.to_string())], move || Ok(Outcome::ratfunc(&uniform::check_g_prime(&rep)?))));
    }
    for n in (1..=cfg.max_n.min(UNIFORM_MAX_N)).filter(|n| n % 2 == 1) {
        let t = table.clone();
        jobs.push(job(format!("lemma.uniform.n={n}"), &[("n", n.to_string())], move || {
            uniform::check_uniformization_endo_with(&t, n)?;
            Ok(Outcome::zero_if("0".into()))
        }));
        let t = table.clone();
        let trunc = cfg.trunc;
        jobs.push(job(format!("lemma.intvallem.n={n}"), &[("n", n.to_string()), ("trunc", trunc.to_string())], move || {
            let w = uniform::integrality_witness_with(&t, n, trunc)?;
            Ok(Outcome::rational(&(w - int(n))))
        }));
    }
}

/// Built-in sample systems: the golden-file inputs.
pub const SAMPLES: [(&str, &str); 3] = [
    ("single", include_str!("../tests/golden/single.dio")),
    ("pythagoras", include_str!("../tests/golden/pythagoras.dio")),
    ("sum_product", include_str!("../tests/golden/sum_product.dio")),
];

/// Structural problems of a lowered formula: dialect violations, dead or
/// undeclared variables, non-determinism. Empty when well-formed.
pub fn encoder_violations(sys: &encoder::DioSystem, dialect: Dialect) -> Vec<String> {
    let f = encoder::encode_system(sys, dialect);
    let mut bad: Vec<String> = f.dialect_violations(dialect).into_iter().map(|(k, c)| format!("{c} {k} atoms")).collect();
    bad.extend(f.dead_vars().into_iter().map(|v| format!("dead {v}")));
    bad.extend(f.undeclared_vars().into_iter().map(|v| format!("undeclared {v}")));
    let s = encoder::render_formula(&f, Format::Json);
    if s != encoder::render_formula(&encoder::encode_system(sys, dialect), Format::Json) {
        bad.push("non-deterministic".into());
    }
    match encoder::parse_formula(&s) {
        Ok(g) if g == f => {}
        _ => bad.push("JSON does not round-trip".into()),
    }
    bad
}

fn encoder_jobs(rng: &mut ChaCha8Rng, jobs: &mut Vec<Job>) {
    for (name, text) in SAMPLES {
        for d in Dialect::ALL {
            jobs.push(job(format!("encoder.invariants.{name}.{d}"), &[("input", name.into()), ("dialect", d.to_string())], move || {
                let sys = encoder::parse_diophantine(text)?;
                let bad = encoder_violations(&sys, d);
                Ok(Outcome::zero_if(if bad.is_empty() { "0".into() } else { bad.join("; ") }))
            }));
        }
    }
    for i in 0..200 {
        let f = encoder::random_formula(rng);
        jobs.push(job(format!("encoder.roundtrip.i={i}"), &[("i", i.to_string())], move || {
            let back = encoder::parse_formula(&encoder::render_formula(&f, Format::Json))?;
            Ok(Outcome::zero_if(if back == f { "0".into() } else { "AST changed".into() }))
        }));
    }
}

/// Lemma label of a check id, used as the report row.
pub fn lemma_label(check_id: &str) -> &'static str {
    let mut parts = check_id.split('.');
    let family = (parts.next().unwrap_or(""), parts.next().unwrap_or(""));
    match family {
        ("lemma", "liz") => "Liz",
        ("lemma", "wellknown") => "wellknown",
        ("lemma", "productformula") => "productformula",
        ("lemma", "quotienttilde") => "quotienttilde",
        ("lemma", "poly") => "Poly",
        ("lemma", "grouplaw") => "groupLaw",
        ("lemma", "sofia") => "Sofia",
        ("lemma", "alphaa") => "alphaA",
        ("lemma", "alla") => "Alla",
        ("lemma", "central0") => "central0",
        ("lemma", "central") => "central",
        ("lemma", "properties") => "properties",
        ("lemma", "lawtransfer") => "lawtransfer",
        ("lemma", "lemg") => "lemG",
        ("lemma", "uniform") => "uniform",
        ("lemma", "intvallem") => "intvallem",
        ("eq", "mariac") => "mariac",
        ("eq", "md") => "MD",
        ("encoder", _) => "encoder",
        _ => "other",
    }
}

/// Table of counts per lemma, lemmas with failures first, then the failing checks.
pub fn report(certs: &[Certificate]) -> String {
    let mut rows: BTreeMap<&str, [usize; 3]> = BTreeMap::new();
    for c in certs {
        let r = rows.entry(lemma_label(&c.check_id)).or_default();
        r[match c.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Undefined => 2,
        }] += 1;
    }
    let mut rows: Vec<_> = rows.into_iter().collect();
    rows.sort_by_key(|(name, r)| (r[1] == 0, *name));
    let mut s = format!("{:<16} {:>6} {:>6} {:>6} {:>9}\n", "lemma", "checks", "pass", "fail", "undefined");
    for (name, [p, f, u]) in &rows {
        let _ = writeln!(s, "{:<16} {:>6} {:>6} {:>6} {:>9}", name, p + f + u, p, f, u);
    }
    let failing: Vec<_> = certs.iter().filter(|c| c.status == Status::Fail).collect();
    if !failing.is_empty() {
        s.push_str("\nfailing checks:\n");
        for c in failing {
            let mut r = c.residual.clone();
            if r.len() > 120 {
                r.truncate(r.char_indices().take_while(|(i, _)| *i < 117).last().map_or(0, |(i, ch)| i + ch.len_utf8()));
                r.push_str("...");
            }
            let _ = writeln!(s, "  {}: {}", c.check_id, r);
        }
    }
    s
}

pub fn write_certificates(path: &std::path::Path, certs: &[Certificate]) -> Result<()> {
    let mut s = serde_json::to_string_pretty(certs)?;
    s.push('\n');
    std::fs::write(path, s)?;
    Ok(())
}

pub fn read_certificates(path: &std::path::Path) -> Result<Vec<Certificate>> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert(id: &str, status: Status) -> Certificate {
        let residual = if status == Status::Pass { "0" } else { "1" }.into();
        Certificate { check_id: id.into(), params: BTreeMap::new(), status, residual, elapsed_ms: 0 }
    }

    #[test]
    fn natural_order() {
        let mut ids = vec!["lemma.liz.n=10", "lemma.liz.n=-2", "lemma.liz.n=9", "lemma.liz.n=-10"];
        ids.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(ids, ["lemma.liz.n=-10", "lemma.liz.n=-2", "lemma.liz.n=9", "lemma.liz.n=10"]);
    }

    #[test]
    fn suites_parse() {
        assert_eq!(Suite::parse_list("all").unwrap(), Suite::ALL);
        assert_eq!(Suite::parse_list("encoder,curve").unwrap(), [Suite::Curve, Suite::Encoder]);
        assert!(Suite::parse_list("").unwrap().is_empty());
        assert!(Suite::parse_list("curves").is_err());
    }

    #[test]
    fn validation() {
        let ok = CampaignConfig::default();
        assert!(ok.validate().is_ok());
        assert!(CampaignConfig { max_n: 0, ..ok.clone() }.validate().is_err());
        assert!(CampaignConfig { trunc: 7, ..ok.clone() }.validate().is_err());
        assert!(CampaignConfig { max_n: 17, ..ok.clone() }.validate().is_err());
        assert_eq!(CampaignConfig { max_n: 16, ..ok }.warnings().len(), 1);
    }

    #[test]
    fn reports() {
        assert_eq!(report(&[]).lines().count(), 1);
        let all_pass = report(&[cert("lemma.liz.n=1", Status::Pass), cert("eq.md.n=1", Status::Pass)]);
        assert!(!all_pass.contains("failing"));
        let mixed = report(&[cert("lemma.liz.n=1", Status::Pass), cert("lemma.wellknown.n=1", Status::Fail)]);
        let rows: Vec<&str> = mixed.lines().collect();
        assert!(rows[1].starts_with("wellknown"));
        assert!(rows[2].starts_with("Liz"));
        assert!(mixed.contains("lemma.wellknown.n=1: 1"));
    }

    #[test]
    fn empty_campaign() {
        let cfg = CampaignConfig { suites: vec![], ..Default::default() };
        assert!(run_campaign(&cfg).unwrap().is_empty());
    }
}
