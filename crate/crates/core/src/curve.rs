//! The curves `f(δ,z)·Y² = X³ + δX² + X` and their nodal specialization `δ = −2`.
//!
//! Points are stored in twisted coordinates: the pair `(x, y)` stands for the
//! point `(x, s·y)` of `Y² = X³ + δX² + X` where `s² = f(δ, z)` (or `f̃(z)` on
//! the nodal curve). The element `s` never needs to be represented: the
//! addition law only ever involves `s²`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use crate::algebra::{int, RatFunc, VarId};
use crate::error::{Error, Result};
use crate::series::{expand_at, TruncSeries};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CurvePoint {
    Infinity,
    Affine { x: RatFunc, y: RatFunc },
}

impl CurvePoint {
    pub fn affine(x: RatFunc, y: RatFunc) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn x(&self) -> Option<&RatFunc> {
        match self {
            CurvePoint::Affine { x, .. } => Some(x),
            CurvePoint::Infinity => None,
        }
    }

    pub fn y(&self) -> Option<&RatFunc> {
        match self {
            CurvePoint::Affine { y, .. } => Some(y),
            CurvePoint::Infinity => None,
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => f.write_str("∞"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    /// `E_δ` over ℚ(δ, z), twisted by `f(δ, z)`.
    Generic,
    /// `Ẽ` over ℚ(z), twisted by `f̃(z) = z(z−1)²`.
    Nodal,
    /// `Ẽ` untwisted: `Y² = X(X−1)²`, for points in other coordinates (e.g. `t`).
    NodalPlain,
}

/// A curve model: the parameter δ, the twisting function, and an optional
/// deliberate sign error in the addition law (used to check that the
/// verification harness notices wrong arithmetic).
#[derive(Clone, Debug)]
pub struct Curve {
    kind: CurveKind,
    delta: RatFunc,
    twist: RatFunc,
    tampered: bool,
}

pub fn f_generic() -> RatFunc {
    "z^3+δ*z^2+z".parse().unwrap()
}

pub fn f_tilde() -> RatFunc {
    "z*(z-1)^2".parse().unwrap()
}

impl Curve {
    pub fn generic() -> Self {
        Curve { kind: CurveKind::Generic, delta: RatFunc::var(VarId::delta()), twist: f_generic(), tampered: false }
    }

    pub fn nodal() -> Self {
        Curve { kind: CurveKind::Nodal, delta: RatFunc::integer(-2), twist: f_tilde(), tampered: false }
    }

    pub fn nodal_plain() -> Self {
        Curve { kind: CurveKind::NodalPlain, delta: RatFunc::integer(-2), twist: RatFunc::one(), tampered: false }
    }

    /// Same curve with the sign of `m` flipped in `b = −b₁ − m(a − a₁)`.
    pub fn tampered(mut self) -> Self {
        self.tampered = true;
        self
    }

    pub fn is_tampered(&self) -> bool {
        self.tampered
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn delta(&self) -> &RatFunc {
        &self.delta
    }

    pub fn twist(&self) -> &RatFunc {
        &self.twist
    }

    fn is_nodal(&self) -> bool {
        self.kind != CurveKind::Generic
    }

    /// `X³ + δX² + X`.
    pub fn cubic(&self, x: &RatFunc) -> RatFunc {
        // Horner form keeps every sum over a single denominator.
        &(&(x * &(x + &self.delta)) + &RatFunc::one()) * x
    }

    /// `X` derivative of the cubic: `3X² + 2δX + 1`.
    pub fn cubic_prime(&self, x: &RatFunc) -> RatFunc {
        &(x * &(&x.scale_by(&int(3)) + &self.delta.scale_by(&int(2)))) + &RatFunc::one()
    }

    /// `twist·y² − (x³ + δx² + x)`; zero exactly for points on the curve.
    pub fn residual(&self, p: &CurvePoint) -> RatFunc {
        match p {
            CurvePoint::Infinity => RatFunc::zero(),
            CurvePoint::Affine { x, y } => &(&self.twist * &(y * y)) - &self.cubic(x),
        }
    }

    /// On-curve constructor.
    pub fn point(&self, x: RatFunc, y: RatFunc) -> Result<CurvePoint> {
        let p = CurvePoint::Affine { x, y };
        self.check_field(&p)?;
        if !self.residual(&p).is_zero() {
            return Err(Error::Precondition(format!("{p} is not on the curve")));
        }
        Ok(p)
    }

    fn check_field(&self, p: &CurvePoint) -> Result<()> {
        if let CurvePoint::Affine { x, y } = p {
            let d = VarId::delta();
            if self.is_nodal() && (x.vars().contains(&d) || y.vars().contains(&d)) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(())
    }

    fn check_operand(&self, p: &CurvePoint) -> Result<()> {
        self.check_field(p)?;
        if let CurvePoint::Affine { x, y } = p {
            if self.is_nodal() && x.is_one() && y.is_zero() {
                return Err(Error::SingularPoint);
            }
        }
        Ok(())
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine { x: x.clone(), y: -y },
        }
    }

    /// The addition law, cases in the printed order: neutral element,
    /// opposite points, a second summand with `a₂ = 0`, then the chord/tangent case.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        self.check_operand(p)?;
        self.check_operand(q)?;
        let (a1, b1, a2, b2) = match (p, q) {
            (CurvePoint::Infinity, _) => return Ok(q.clone()),
            (_, CurvePoint::Infinity) => return Ok(p.clone()),
            (CurvePoint::Affine { x: a1, y: b1 }, CurvePoint::Affine { x: a2, y: b2 }) => (a1, b1, a2, b2),
        };
        if a1 == a2 && *b1 == -b2 {
            return Ok(CurvePoint::Infinity);
        }
        if a2.is_zero() && !a1.is_zero() {
            let inv = a1.recip()?;
            return Ok(CurvePoint::Affine { x: inv.clone(), y: -&(b1 * &(&inv * &inv)) });
        }
        if a1.is_zero() && !a2.is_zero() {
            // Same rule with the summands exchanged (the law is commutative).
            let inv = a2.recip()?;
            return Ok(CurvePoint::Affine { x: inv.clone(), y: -&(b2 * &(&inv * &inv)) });
        }
        let m = if a1 != a2 {
            (b2 - b1).checked_div(&(a2 - a1))?
        } else {
            if b1.is_zero() {
                return Err(Error::Precondition("tangent slope at a point of order 2".into()));
            }
            self.cubic_prime(a1).checked_div(&(&self.twist * b1).scale_by(&int(2)))?
        };
        let c = b1 - &(a1 * &m);
        let a = (&self.twist * &(&c * &c)).checked_div(&(a1 * a2))?;
        let slope_term = &m * &(&a - a1);
        let b = if self.tampered { &slope_term - b1 } else { -&(b1 + &slope_term) };
        Ok(CurvePoint::Affine { x: a, y: b })
    }

    pub fn double(&self, p: &CurvePoint) -> Result<CurvePoint> {
        self.add(p, p)
    }

    /// `n·P` by double-and-add, without memoization.
    pub fn multiply(&self, p: &CurvePoint, n: i64) -> Result<CurvePoint> {
        let mut acc = CurvePoint::Infinity;
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        for bit in (0..64 - n.unsigned_abs().leading_zeros()).rev() {
            acc = self.double(&acc)?;
            if (n.unsigned_abs() >> bit) & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
        }
        Ok(acc)
    }

    /// The generator `(z, 1)` (on the twisted models).
    pub fn generator(&self) -> CurvePoint {
        assert!(self.kind != CurveKind::NodalPlain, "the untwisted model has no (z, 1) point");
        CurvePoint::Affine { x: RatFunc::var(VarId::z()), y: RatFunc::one() }
    }
}

/// `n·(z, 1) = (x_n, y_n)` in twisted coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoPair {
    pub n: i64,
    pub x: RatFunc,
    pub y: RatFunc,
}

/// Memoized multiples of `(z, 1)`. Safe to share between threads: entries are
/// computed outside the lock and inserted only if still absent.
pub struct EndoTable {
    curve: Curve,
    memo: RwLock<HashMap<i64, Arc<EndoPair>>>,
}

impl EndoTable {
    pub fn new(curve: Curve) -> Self {
        EndoTable { curve, memo: RwLock::new(HashMap::new()) }
    }

    /// Process-wide table for the untampered generic curve.
    pub fn generic() -> &'static EndoTable {
        static TABLE: OnceLock<EndoTable> = OnceLock::new();
        TABLE.get_or_init(|| EndoTable::new(Curve::generic()))
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// `(x_n, y_n)`. Built along the binary chain `n = ⌈n/2⌉ + ⌊n/2⌋`
    /// (a doubling when both halves agree).
    pub fn get(&self, n: i64) -> Result<Arc<EndoPair>> {
        if n == 0 {
            return Err(Error::ZeroScalar);
        }
        if let Some(p) = self.memo.read().unwrap().get(&n) {
            return Ok(p.clone());
        }
        let pair = if n < 0 {
            let p = self.get(-n)?;
            EndoPair { n, x: p.x.clone(), y: -&p.y }
        } else if n == 1 {
            EndoPair { n, x: RatFunc::var(VarId::z()), y: RatFunc::one() }
        } else {
            let lo = self.get(n / 2)?;
            let hi = self.get(n - n / 2)?;
            let p = CurvePoint::affine(hi.x.clone(), hi.y.clone());
            let q = CurvePoint::affine(lo.x.clone(), lo.y.clone());
            match self.curve.add(&p, &q)? {
                CurvePoint::Affine { x, y } => EndoPair { n, x, y },
                CurvePoint::Infinity => {
                    return Err(Error::Refuted(format!("{n}·(z,1) is the point at infinity")))
                }
            }
        };
        let mut memo = self.memo.write().unwrap();
        Ok(memo.entry(n).or_insert_with(|| Arc::new(pair)).clone())
    }

    /// `∂x_n/∂z − n·y_n`.
    pub fn check_wellknown(&self, n: i64) -> Result<RatFunc> {
        let p = self.get(n)?;
        Ok(&p.x.derivative(&VarId::z()) - &p.y.scale_by(&int(n)))
    }

    /// Residual of `[(3z²+2δz+1)y + 2f·y_z]·y = x_z(3x²+2δx+1)` for `(x_n, y_n)`.
    pub fn check_mariac(&self, n: i64) -> Result<RatFunc> {
        let p = self.get(n)?;
        Ok(mariac_residual(&self.curve, &p.x, &p.y))
    }

    /// `f(δ,z)·y_n² − f(δ, x_n)`.
    pub fn check_md(&self, n: i64) -> Result<RatFunc> {
        let p = self.get(n)?;
        Ok(self.curve.residual(&CurvePoint::affine(p.x.clone(), p.y.clone())))
    }

    /// Both product formulas on `E_δ` and on `Ẽ`.
    pub fn check_product_formulas(&self, n: i64, k: i64) -> Result<ProductResiduals> {
        if n < 2 || k < 1 || k >= n {
            return Err(Error::Precondition(format!("product formulas need n ≥ 2 and 1 ≤ k < n, got n={n}, k={k}")));
        }
        let x = |m: i64| -> Result<RatFunc> { Ok(self.get(m)?.x.clone()) };
        let (xn, xk, xnk, xmk, x2n) = (x(n)?, x(k)?, x(n + k)?, x(n - k)?, x(2 * n)?);
        let delta = self.curve.delta().clone();
        let generic = product_residuals(&xn, &xk, &xnk, &xmk, &x2n, &delta);
        let tilde = |f: &RatFunc| specialize(f, n);
        let nodal = product_residuals(
            &tilde(&xn)?,
            &tilde(&xk)?,
            &tilde(&xnk)?,
            &tilde(&xmk)?,
            &tilde(&x2n)?,
            &RatFunc::integer(-2),
        );
        Ok(ProductResiduals { eq6: generic.0, eq7: generic.1, eq6_tilde: nodal.0, eq7_tilde: nodal.1 })
    }

    /// `(x̃_n, ỹ_n)`, refusing if δ+2 is a zero or pole of `x_n` or `y_n`.
    pub fn specialize_tilde(&self, n: i64) -> Result<(RatFunc, RatFunc)> {
        let p = self.get(n)?;
        specialize_tilde(&p)
    }

    /// Expansion of `e_n = x_n / x̃_n` in powers of `δ + 2` to `order`.
    pub fn check_quotienttilde(&self, n: i64, order: i64) -> Result<TruncSeries<RatFunc>> {
        if n < 1 {
            return Err(Error::Precondition("quotient expansion needs n ≥ 1".into()));
        }
        let p = self.get(n)?;
        let xt = specialize(&p.x, n)?;
        let e = p.x.checked_div(&xt)?;
        let s = expand_at(&e, &VarId::delta(), &int(-2), order)?;
        if s.valuation() < 0 {
            return Err(Error::Refuted(format!("e_{n} has a pole along δ = −2")));
        }
        Ok(s)
    }
}

/// Residuals of the two product formulas
/// `x_{n+k}x_{n−k}(x_n−x_k)² − (x_k x_n − 1)²` and
/// `4x_{2n}(x_n + δ + x_n⁻¹) − (x_n − x_n⁻¹)²`, on both curves.
#[derive(Clone, Debug)]
pub struct ProductResiduals {
    pub eq6: RatFunc,
    pub eq7: RatFunc,
    pub eq6_tilde: RatFunc,
    pub eq7_tilde: RatFunc,
}

impl ProductResiduals {
    pub fn all_zero(&self) -> bool {
        self.eq6.is_zero() && self.eq7.is_zero() && self.eq6_tilde.is_zero() && self.eq7_tilde.is_zero()
    }
}

fn product_residuals(
    xn: &RatFunc,
    xk: &RatFunc,
    xnk: &RatFunc,
    xmk: &RatFunc,
    x2n: &RatFunc,
    delta: &RatFunc,
) -> (RatFunc, RatFunc) {
    let one = RatFunc::one();
    let diff = xn - xk;
    let prod = &(xk * xn) - &one;
    let r6 = &(&(xnk * xmk) * &(&diff * &diff)) - &(&prod * &prod);
    let inv = xn.recip().expect("x_n is not zero");
    let s = xn - &inv;
    let r7 = &(x2n * &(&(xn + delta) + &inv)).scale_by(&int(4)) - &(&s * &s);
    (r6, r7)
}

fn mariac_residual(curve: &Curve, x: &RatFunc, y: &RatFunc) -> RatFunc {
    let z = VarId::z();
    let zf = RatFunc::var(z.clone());
    let f = curve.cubic(&zf);
    let f_z = curve.cubic_prime(&zf);
    let lhs = &(&(&f_z * y) + &(&f * &y.derivative(&z)).scale_by(&int(2))) * y;
    let rhs = &x.derivative(&z) * &curve.cubic_prime(x);
    &lhs - &rhs
}

fn specialize(f: &RatFunc, n: i64) -> Result<RatFunc> {
    match f.evaluate_partial(&VarId::delta(), &int(-2)) {
        Some(v) if !v.is_zero() => Ok(v),
        _ => Err(Error::PoleOrZeroAtNode { n }),
    }
}

/// Substitute δ = −2 into an endomorphism pair. An error here would mean
/// δ + 2 is a zero or a pole of `x_n` or `y_n`.
pub fn specialize_tilde(p: &EndoPair) -> Result<(RatFunc, RatFunc)> {
    if p.n == 0 {
        return Err(Error::ZeroScalar);
    }
    Ok((specialize(&p.x, p.n)?, specialize(&p.y, p.n)?))
}

/// `n·(z, 1)` on the generic curve, from the shared table.
pub fn multiply_point(n: i64) -> Result<Arc<EndoPair>> {
    EndoTable::generic().get(n)
}

/// `f(δ,z)·y² − f(δ,x)`.
pub fn check_md(x: &RatFunc, y: &RatFunc) -> RatFunc {
    Curve::generic().residual(&CurvePoint::affine(x.clone(), y.clone()))
}

/// Generic-curve addition.
pub fn add_points(p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
    Curve::generic().add(p, q)
}

pub fn check_wellknown(n: i64) -> Result<RatFunc> {
    EndoTable::generic().check_wellknown(n)
}

pub fn check_mariac(n: i64) -> Result<RatFunc> {
    EndoTable::generic().check_mariac(n)
}

pub fn check_product_formulas(n: i64, k: i64) -> Result<ProductResiduals> {
    EndoTable::generic().check_product_formulas(n, k)
}

pub fn check_quotienttilde(n: i64, order: i64) -> Result<TruncSeries<RatFunc>> {
    EndoTable::generic().check_quotienttilde(n, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn neutral_and_inverse() {
        let c = Curve::generic();
        let p = c.generator();
        assert_eq!(c.add(&p, &CurvePoint::Infinity).unwrap(), p);
        assert_eq!(c.add(&p, &c.neg(&p)).unwrap(), CurvePoint::Infinity);
    }

    #[test]
    fn doubling_the_generator() {
        let c = Curve::generic();
        let p2 = c.double(&c.generator()).unwrap();
        assert_eq!(p2.x().unwrap(), &r("(z^2-1)^2/(4*(z^3+δ*z^2+z))"));
        assert!(c.residual(&p2).is_zero());
    }

    #[test]
    fn small_multiples() {
        let t = EndoTable::new(Curve::generic());
        assert_eq!(t.get(1).unwrap().x, r("z"));
        let p3 = t.get(3).unwrap();
        let m3 = t.get(-3).unwrap();
        assert_eq!(m3.x, p3.x);
        assert_eq!(m3.y, -&p3.y);
        assert!(matches!(t.get(0), Err(Error::ZeroScalar)));
        for n in 1..=5 {
            assert!(t.check_md(n).unwrap().is_zero());
            assert!(t.check_wellknown(n).unwrap().is_zero());
            assert_eq!(t.get(n).unwrap().x.degree_num(&VarId::z()), (n * n) as u32);
        }
    }

    #[test]
    fn nodal_rejects_the_node() {
        let c = Curve::nodal();
        let bad = CurvePoint::affine(RatFunc::one(), RatFunc::zero());
        assert!(matches!(c.add(&bad, &c.generator()), Err(Error::SingularPoint)));
        let mixed = CurvePoint::affine(r("δ"), RatFunc::one());
        assert!(matches!(c.add(&mixed, &c.generator()), Err(Error::FieldMismatch)));
    }

    #[test]
    fn md_examples() {
        assert!(check_md(&r("z"), &RatFunc::one()).is_zero());
        assert_eq!(check_md(&r("z"), &RatFunc::integer(2)), r("3*(z^3+δ*z^2+z)"));
    }
}
