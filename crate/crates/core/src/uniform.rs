//! The nodal cubic `Y² = X(X − 1)²` parametrized by `℘̃ = ((1+t)/(1−t))²`,
//! `℘̃′`, `ξ̃ = 2(1+t)/(1−t)` in the coordinate `t = e^u`.
//!
//! Derivatives in `u` become `t·d/dt`. Every function here is a rational
//! function of `t`, so periodicity in `u` holds by construction.

use crate::algebra::{int, rat, poly_div_exact, MPoly, RatFunc, Rational, VarId};
use crate::curve::{f_tilde, Curve, CurvePoint, EndoTable};
use crate::error::{Error, Result};
use crate::places::alpha_at_singular;
use crate::series::{expand_at, represent, RepTriple};

fn t() -> RatFunc {
    RatFunc::var(VarId::t())
}

/// `t·df/dt`, the derivative in `u`.
pub fn u_derivative(f: &RatFunc) -> RatFunc {
    &t() * &f.derivative(&VarId::t())
}

pub fn wp() -> RatFunc {
    "((1+t)/(1-t))^2".parse().unwrap()
}

pub fn wp_prime() -> RatFunc {
    u_derivative(&wp())
}

pub fn xi() -> RatFunc {
    "2*(1+t)/(1-t)".parse().unwrap()
}

/// `g(℘̃(t))` for `g` in `z`.
pub fn compose_wp(g: &RatFunc) -> Result<RatFunc> {
    g.substitute(&VarId::z(), &wp())
}

/// `f(s)` for `f` in `t`, e.g. `s = 1/t` or `s = t₁t₂`.
pub fn at(f: &RatFunc, s: &RatFunc) -> Result<RatFunc> {
    f.substitute(&VarId::t(), s)
}

/// Residuals of the five functional equations, each named by its identity.
pub fn check_functional_equations() -> Result<Vec<(&'static str, RatFunc)>> {
    let (p, pp, x) = (wp(), wp_prime(), xi());
    let one = RatFunc::one();
    let half = rat(1, 2);
    let ft_z = f_tilde().derivative(&VarId::z());
    Ok(vec![
        ("wp'^2 = f~(wp)", &(&pp * &pp) - &compose_wp(&f_tilde())?),
        ("wp'' = f~_z(wp)/2", &u_derivative(&pp) - &compose_wp(&ft_z)?.scale_by(&half)),
        ("xi' = wp - 1", &u_derivative(&x) - &(&p - &one)),
        ("wp = xi^2/4", &p - &(&x * &x).scale_by(&rat(1, 4))),
        ("wp' = (wp - 1) xi / 2", &pp - &(&(&p - &one) * &x).scale_by(&half)),
    ])
}

/// `℘̃(1/t) − ℘̃(t)`, `℘̃′(1/t) + ℘̃′(t)`, `ξ̃(1/t) + ξ̃(t)`.
pub fn check_oddness() -> Result<Vec<(&'static str, RatFunc)>> {
    let inv = t().recip()?;
    let (p, pp, x) = (wp(), wp_prime(), xi());
    Ok(vec![
        ("wp(1/t) = wp(t)", &at(&p, &inv)? - &p),
        ("wp'(1/t) = -wp'(t)", &at(&pp, &inv)? + &pp),
        ("xi(1/t) = -xi(t)", &at(&x, &inv)? + &x),
    ])
}

#[derive(Clone, Debug, PartialEq)]
pub struct InjectivityReport {
    /// The numerator of `℘̃(t₁) − ℘̃(t₂)` is a constant times `(t₁ − t₂)(1 − t₁t₂)`.
    pub factorization_ok: bool,
    /// Roots of the numerator of `℘̃′(t) − ℘̃′(1/t)`, the condition left on the branch `t₂ = 1/t₁`.
    pub branch_roots: Vec<Rational>,
    /// Every admissible root (`t ≠ 0`) satisfies `t = 1/t`, so `t₁ = t₂` on that branch too.
    pub forces_equal: bool,
}

/// `℘̃(t₁) = ℘̃(t₂)` and `℘̃′(t₁) = ℘̃′(t₂)` together force `t₁ = t₂`.
pub fn check_injectivity() -> Result<InjectivityReport> {
    let (t1, t2) = (RatFunc::var(VarId::t1()), RatFunc::var(VarId::t2()));
    let diff = &at(&wp(), &t1)? - &at(&wp(), &t2)?;
    let num = diff.num();
    let lin: MPoly = "t1-t2".parse().unwrap();
    let other: MPoly = "1-t1*t2".parse().unwrap();
    let factorization_ok = poly_div_exact(&num, &lin)
        .and_then(|q| poly_div_exact(&q, &other))
        .is_some_and(|c| c.is_constant());
    // On 1 − t₁t₂ = 0 the second equation reads ℘̃′(t) = ℘̃′(1/t).
    let branch = &wp_prime() - &at(&wp_prime(), &t().recip()?)?;
    let mut rest = branch.num();
    let mut branch_roots = Vec::new();
    for (root, factor) in [(int(0), "t"), (int(-1), "t+1"), (int(1), "t-1")] {
        let f: MPoly = factor.parse().unwrap();
        let mut seen = false;
        while let Some(q) = poly_div_exact(&rest, &f) {
            rest = q;
            seen = true;
        }
        if seen {
            branch_roots.push(root);
        }
    }
    let fully_split = rest.is_constant() && !rest.is_zero();
    let forces_equal = fully_split
        && branch_roots.iter().filter(|r| **r != int(0)).all(|r| r * r == int(1));
    Ok(InjectivityReport { factorization_ok, branch_roots, forces_equal })
}

/// Residuals of the addition law against multiplication in `t`.
#[derive(Clone, Debug)]
pub struct TransferResiduals {
    /// `P(t₁) ⊕ P(t₂) − P(t₁t₂)`, both coordinates.
    pub generic: (RatFunc, RatFunc),
    /// `P(t) ⊕ P(t) − P(t²)`.
    pub doubling: (RatFunc, RatFunc),
    /// `P(t) ⊕ P(1/t)` is the point at infinity.
    pub inverse_is_infinity: bool,
}

impl TransferResiduals {
    pub fn all_zero(&self) -> bool {
        self.generic.0.is_zero()
            && self.generic.1.is_zero()
            && self.doubling.0.is_zero()
            && self.doubling.1.is_zero()
            && self.inverse_is_infinity
    }
}

fn point_at(s: &RatFunc) -> Result<CurvePoint> {
    Ok(CurvePoint::affine(at(&wp(), s)?, at(&wp_prime(), s)?))
}

fn coordinate_residuals(got: &CurvePoint, want: &CurvePoint) -> (RatFunc, RatFunc) {
    match (got, want) {
        (CurvePoint::Affine { x: a, y: b }, CurvePoint::Affine { x: c, y: d }) => (a - c, b - d),
        _ => (RatFunc::one(), RatFunc::one()),
    }
}

/// Transfer check on the untwisted nodal curve.
pub fn check_group_transfer() -> Result<TransferResiduals> {
    check_group_transfer_on(&Curve::nodal_plain())
}

/// Transfer check on a given model of `Y² = X(X−1)²` (e.g. a tampered one).
pub fn check_group_transfer_on(curve: &Curve) -> Result<TransferResiduals> {
    let (t1, t2) = (RatFunc::var(VarId::t1()), RatFunc::var(VarId::t2()));
    let sum = curve.add(&point_at(&t1)?, &point_at(&t2)?)?;
    let generic = coordinate_residuals(&sum, &point_at(&(&t1 * &t2))?);
    let p = point_at(&t())?;
    let doubled = curve.double(&p)?;
    let doubling = coordinate_residuals(&doubled, &point_at(&(&t() * &t()))?);
    let inverse_is_infinity = curve.add(&p, &point_at(&t().recip()?)?)? == CurvePoint::Infinity;
    Ok(TransferResiduals { generic, doubling, inverse_is_infinity })
}

/// `H = β + γ(z−1) + f̃·h_z + ½·f̃_z·h` for a polynomial `h`.
pub fn h_function(rep: &RepTriple) -> Result<RatFunc> {
    let h = exact_h(rep)?;
    let z = VarId::z();
    let ft = f_tilde();
    let ft_z = ft.derivative(&z);
    let base: RatFunc = format!("{} + {}*(z-1)", MPoly::constant(rep.beta.clone()), MPoly::constant(rep.gamma.clone()))
        .parse()?;
    Ok(&(&base + &(&ft * &h.derivative(&z))) + &(&ft_z * &h).scale_by(&rat(1, 2)))
}

fn exact_h(rep: &RepTriple) -> Result<RatFunc> {
    if !rep.h.is_exact() {
        return Err(Error::Precondition("h must be an exact polynomial".into()));
    }
    Ok(RatFunc::from(rep.h.to_poly()))
}

/// `G′` for `G = βu + γξ̃ + ℘̃′·(h∘℘̃)`, differentiated in `u`
/// (the `βu` term contributes the constant `β`).
pub fn g_prime(rep: &RepTriple) -> Result<RatFunc> {
    let h = exact_h(rep)?;
    let rest = &xi().scale_by(&rep.gamma) + &(&wp_prime() * &compose_wp(&h)?);
    Ok(&RatFunc::constant(rep.beta.clone()) + &u_derivative(&rest))
}

/// `G′ − H∘℘̃`.
pub fn check_g_prime(rep: &RepTriple) -> Result<RatFunc> {
    Ok(&g_prime(rep)? - &compose_wp(&h_function(rep)?)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformizationResult {
    pub n: i64,
    /// `e^μ`: +1 for `μ = 0`, −1 for `μ = πi`.
    pub sigma: i64,
    pub x_identity_ok: bool,
    pub y_identity_ok: bool,
}

/// Finds `σ = ±1` with `x̃_n(℘̃(t)) = ℘̃(σtⁿ)` and `℘̃′(t)·ỹ_n(℘̃(t)) = ℘̃′(σtⁿ)`.
pub fn check_uniformization_endo(n: i64) -> Result<UniformizationResult> {
    check_uniformization_endo_with(EndoTable::generic(), n)
}

pub fn check_uniformization_endo_with(table: &EndoTable, n: i64) -> Result<UniformizationResult> {
    if n == 0 {
        return Err(Error::ZeroScalar);
    }
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("the endomorphism identity is checked for odd n only, got {n}")));
    }
    let (xt, yt) = table.specialize_tilde(n)?;
    let lhs_x = compose_wp(&xt)?;
    let lhs_y = &wp_prime() * &compose_wp(&yt)?;
    let tn = t().pow(n as i32);
    for sigma in [1i64, -1] {
        let s = tn.scale_by(&int(sigma));
        let x_ok = lhs_x == at(&wp(), &s)?;
        let y_ok = lhs_y == at(&wp_prime(), &s)?;
        if x_ok && y_ok {
            return Ok(UniformizationResult { n, sigma, x_identity_ok: true, y_identity_ok: true });
        }
    }
    Err(Error::NoSigma { n })
}

/// `β` of the representation of `Ã_n`, required to be an integer and to
/// agree with `α` at the singular point (where `ord_{z−1}(x_n − 1) = 1`).
pub fn integrality_witness(n: i64) -> Result<Rational> {
    integrality_witness_with(EndoTable::generic(), n, 16)
}

pub fn integrality_witness_with(table: &EndoTable, n: i64, trunc: i64) -> Result<Rational> {
    if n % 2 == 0 {
        return Err(Error::Precondition(format!("integrality witness needs odd n, got {n}")));
    }
    let (xt, yt) = table.specialize_tilde(n)?;
    let a_tilde = crate::places::compute_a(&xt, &yt)?;
    let series = expand_at(&a_tilde, &VarId::z(), &int(0), trunc)?
        .to_rational()
        .ok_or_else(|| Error::Precondition("Ã_n does not expand with rational coefficients".into()))?;
    let rep = represent(&series)?;
    if !rep.beta.is_integer() {
        return Err(Error::NonInteger(rep.beta.to_string()));
    }
    let p = table.get(n)?;
    match alpha_at_singular(&p.x, &p.y)? {
        Some(alpha) if alpha == rep.beta => Ok(rep.beta),
        other => Err(Error::Refuted(format!(
            "β = {} but α at the singular point is {}",
            rep.beta,
            other.map_or("undefined".to_string(), |a| a.to_string())
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TruncSeries;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn closed_forms() {
        // d/dt ((1+t)/(1-t))^2 = 4(1+t)/(1-t)^3
        assert_eq!(wp_prime(), r("4*t*(1+t)/(1-t)^3"));
        assert_eq!(wp().evaluate(&[(VarId::t(), int(0))]), Some(int(1)));
        assert_eq!(xi().evaluate(&[(VarId::t(), int(-1))]), Some(int(0)));
    }

    #[test]
    fn identities_hold() {
        for (name, res) in check_functional_equations().unwrap() {
            assert!(res.is_zero(), "{name}: {res}");
        }
        for (name, res) in check_oddness().unwrap() {
            assert!(res.is_zero(), "{name}: {res}");
        }
        let inj = check_injectivity().unwrap();
        assert!(inj.factorization_ok && inj.forces_equal, "{inj:?}");
        assert!(check_group_transfer().unwrap().all_zero());
    }

    #[test]
    fn g_prime_examples() {
        let rep = |b: i64, g: i64, h: &[i64]| RepTriple {
            beta: int(b),
            gamma: int(g),
            h: TruncSeries::polynomial(VarId::z(), h.iter().map(|c| int(*c)).collect(), 8),
            exact: true,
        };
        assert_eq!(g_prime(&rep(1, 0, &[])).unwrap(), RatFunc::one());
        assert_eq!(g_prime(&rep(0, 1, &[])).unwrap(), &wp() - &RatFunc::one());
        assert!(check_g_prime(&rep(3, -2, &[1, 0, 5])).unwrap().is_zero());
    }

    #[test]
    fn small_endomorphisms() {
        let one = check_uniformization_endo(1).unwrap();
        assert_eq!(one.sigma, 1);
        assert!(check_uniformization_endo(3).is_ok());
        assert!(matches!(check_uniformization_endo(2), Err(Error::Precondition(_))));
        assert_eq!(integrality_witness(3).unwrap(), int(3));
    }
}
