//! Truncated Laurent series and the linear ODE solvers behind the
//! representation `H = β + γ(z−1) + f̃·h_z + ½·f̃_z·h`, `f̃ = z(z−1)²`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{int, rat, MPoly, RatFunc, Rational, VarId};
use crate::error::{Error, Result};

/// Coefficient field of a series.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn nil() -> Self;
    fn from_rational(q: Rational) -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn inverse(&self) -> Option<Self>;
    fn negate(&self) -> Self {
        Self::nil().minus(self)
    }
}

impl Coeff for Rational {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
}

impl Coeff for RatFunc {
    fn nil() -> Self {
        RatFunc::zero()
    }
    fn from_rational(q: Rational) -> Self {
        RatFunc::constant(q)
    }
    fn is_nil(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn inverse(&self) -> Option<Self> {
        self.recip().ok()
    }
}

/// `Σ_{k=valuation}^{trunc_order-1} coeffs[k-valuation] · (var − center)^k + O((var − center)^trunc_order)`.
///
/// A series that vanishes to truncation has `valuation == trunc_order` and no
/// coefficients. `exact` records that every coefficient at or beyond the
/// truncation is known to be zero, i.e. the series is really a Laurent polynomial.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C> {
    var: VarId,
    center: Rational,
    valuation: i64,
    coeffs: Vec<C>,
    trunc_order: i64,
    exact: bool,
}

impl<C: Coeff> TruncSeries<C> {
    /// Series with coefficients `coeffs[i]` at exponent `start + i`, truncated at `trunc_order`.
    pub fn new(var: VarId, center: Rational, start: i64, coeffs: Vec<C>, trunc_order: i64) -> Self {
        Self::build(var, center, start, coeffs, trunc_order, false)
    }

    fn build(var: VarId, center: Rational, start: i64, mut coeffs: Vec<C>, trunc_order: i64, exact: bool) -> Self {
        let keep = (trunc_order - start).max(0) as usize;
        let exact = exact && coeffs.iter().skip(keep).all(|c| c.is_nil());
        coeffs.truncate(keep);
        let lead = coeffs.iter().position(|c| !c.is_nil());
        match lead {
            None => TruncSeries { var, center, valuation: trunc_order, coeffs: Vec::new(), trunc_order, exact },
            Some(i) => {
                coeffs.drain(..i);
                let valuation = start + i as i64;
                coeffs.resize((trunc_order - valuation) as usize, C::nil());
                TruncSeries { var, center, valuation, coeffs, trunc_order, exact }
            }
        }
    }

    /// A polynomial in `var` (centered at 0) viewed as an exact series.
    pub fn polynomial(var: VarId, coeffs: Vec<C>, trunc_order: i64) -> Self {
        Self::build(var, Rational::zero(), 0, coeffs, trunc_order, true)
    }

    pub fn zero(var: VarId, center: Rational, trunc_order: i64) -> Self {
        Self::build(var, center, trunc_order, Vec::new(), trunc_order, true)
    }

    pub fn var(&self) -> &VarId {
        &self.var
    }

    pub fn center(&self) -> &Rational {
        &self.center
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc_order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// True when the series is known to terminate before its truncation order.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn with_exact(mut self, exact: bool) -> Self {
        self.exact = exact;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `(var − center)^k`; zero below the valuation.
    pub fn coeff(&self, k: i64) -> C {
        assert!(k < self.trunc_order, "coefficient {k} is beyond the truncation order {}", self.trunc_order);
        if k < self.valuation {
            C::nil()
        } else {
            self.coeffs[(k - self.valuation) as usize].clone()
        }
    }

    fn check_compatible(&self, o: &Self) {
        assert!(self.var == o.var && self.center == o.center, "series in different expansion variables");
    }

    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.trunc_order);
        Self::build(self.var.clone(), self.center.clone(), self.valuation, self.coeffs.clone(), order, self.exact)
    }

    fn combine(&self, o: &Self, sub: bool) -> Self {
        self.check_compatible(o);
        let trunc = self.trunc_order.min(o.trunc_order);
        let start = self.valuation.min(o.valuation).min(trunc);
        let coeffs = (start..trunc)
            .map(|k| {
                let (a, b) = (self.coeff(k), o.coeff(k));
                if sub {
                    a.minus(&b)
                } else {
                    a.plus(&b)
                }
            })
            .collect();
        let exact = self.exact && o.exact && self.trunc_order == o.trunc_order;
        Self::build(self.var.clone(), self.center.clone(), start, coeffs, trunc, exact)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.negate()).collect();
        TruncSeries { coeffs, ..self.clone() }
    }

    pub fn scale(&self, c: &C) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.times(c)).collect();
        Self::build(self.var.clone(), self.center.clone(), self.valuation, coeffs, self.trunc_order, self.exact)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_compatible(o);
        let trunc = (self.valuation + o.trunc_order).min(o.valuation + self.trunc_order);
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.var.clone(), self.center.clone(), trunc);
        }
        let start = self.valuation + o.valuation;
        let len = (trunc - start).max(0) as usize;
        let mut coeffs = vec![C::nil(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_nil() || i >= len {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
            }
        }
        // A product of two Laurent polynomials is known beyond the truncation only
        // when nothing was cut off.
        let exact = self.exact && o.exact && {
            let deg = self.valuation + self.coeffs.len() as i64 + o.valuation + o.coeffs.len() as i64 - 2;
            deg < trunc
        };
        Self::build(self.var.clone(), self.center.clone(), start, coeffs, trunc, exact)
    }

    /// Multiplicative inverse; the series must not vanish to truncation.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let len = self.coeffs.len();
        let inv0 = self.coeffs[0].inverse().ok_or(Error::DivisionByZero)?;
        let mut out: Vec<C> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = if k == 0 { inv0.clone() } else { C::nil() };
            if k > 0 {
                for j in 1..=k {
                    acc = acc.minus(&self.coeffs[j].times(&out[k - j]));
                }
                acc = acc.times(&inv0);
            }
            out.push(acc);
        }
        let v = -self.valuation;
        Ok(Self::build(self.var.clone(), self.center.clone(), v, out, v + len as i64, false))
    }

    /// Derivative with respect to the expansion variable.
    pub fn derivative(&self) -> Self {
        let coeffs: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.times(&C::from_rational(int(self.valuation + i as i64))))
            .collect();
        Self::build(self.var.clone(), self.center.clone(), self.valuation - 1, coeffs, self.trunc_order - 1, self.exact)
    }

    /// Raise the truncation order of an exact series (the new coefficients are zero).
    pub fn extend(&self, order: i64) -> Self {
        assert!(self.exact || order <= self.trunc_order, "cannot extend a truncated series");
        Self::build(self.var.clone(), self.center.clone(), self.valuation, self.coeffs.clone(), order, self.exact)
    }

    /// Multiply by `(var − center)^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries {
            valuation: self.valuation + k,
            trunc_order: self.trunc_order + k,
            ..self.clone()
        }
    }

    /// Evaluate the truncated Laurent polynomial at `var − center = x`.
    pub fn sum_at(&self, x: &Rational) -> C {
        let mut acc = C::nil();
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.valuation + i as i64;
            let p = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                num_traits::pow(x.recip(), (-e) as usize)
            };
            acc = acc.plus(&c.times(&C::from_rational(p)));
        }
        acc
    }

    /// Divide the truncated polynomial by `(var − center) − x0`, returning the
    /// quotient (truncation lowered by one) and the remainder.
    pub fn div_linear(&self, x0: &Rational) -> Result<(Self, C)> {
        if self.valuation < 0 {
            return Err(Error::Precondition("division by a linear factor needs a power series".into()));
        }
        let n = self.trunc_order as usize;
        let p: Vec<C> = (0..n as i64).map(|k| self.coeff(k)).collect();
        if n == 0 {
            return Ok((Self::zero(self.var.clone(), self.center.clone(), -1), C::nil()));
        }
        // Synthetic division from the top coefficient down.
        let x0c = C::from_rational(x0.clone());
        let mut q = vec![C::nil(); n - 1];
        let mut carry = C::nil();
        for k in (0..n).rev() {
            let cur = p[k].plus(&carry);
            if k == 0 {
                carry = cur;
            } else {
                carry = cur.times(&x0c);
                q[k - 1] = cur;
            }
        }
        let q = Self::build(self.var.clone(), self.center.clone(), 0, q, self.trunc_order - 1, self.exact);
        Ok((q, carry))
    }
}

impl TruncSeries<RatFunc> {
    /// Convert to rational coefficients when every coefficient is a constant.
    pub fn to_rational(&self) -> Option<TruncSeries<Rational>> {
        let coeffs = self.coeffs.iter().map(|c| c.as_constant()).collect::<Option<Vec<_>>>()?;
        Some(TruncSeries {
            var: self.var.clone(),
            center: self.center.clone(),
            valuation: self.valuation,
            coeffs,
            trunc_order: self.trunc_order,
            exact: self.exact,
        })
    }
}

impl TruncSeries<Rational> {
    /// The truncated series as a polynomial in its variable (center 0 only).
    pub fn to_poly(&self) -> MPoly {
        assert!(self.center.is_zero() && self.valuation >= 0, "polynomial view needs a power series at 0");
        let v = [self.var.clone()];
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![(self.valuation + i as i64) as u32], c.clone()))
            .collect();
        MPoly::from_terms(&v, terms)
    }

    /// Exact series of a polynomial in one variable.
    pub fn from_poly(p: &MPoly, var: &VarId, trunc_order: i64) -> Result<Self> {
        if p.vars().iter().any(|v| v != var) {
            return Err(Error::Precondition(format!("{p} is not a polynomial in {var} alone")));
        }
        let coeffs: Vec<Rational> = p.coeffs_in(var).iter().map(|c| c.as_constant().unwrap()).collect();
        Ok(Self::polynomial(var.clone(), coeffs, trunc_order))
    }
}

fn render_base(var: &VarId, center: &Rational) -> String {
    if center.is_zero() {
        var.to_string()
    } else if center.is_negative() {
        format!("({} + {})", var, crate::algebra::MPoly::constant(-center.clone()))
    } else {
        format!("({} - {})", var, crate::algebra::MPoly::constant(center.clone()))
    }
}

impl<C: Coeff> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = render_base(&self.var, &self.center);
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_nil() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match self.valuation + i as i64 {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{base}")?,
                e => write!(f, "({c})*{base}^{e}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        if !self.exact {
            write!(f, " + O({base}^{})", self.trunc_order)?;
        }
        Ok(())
    }
}

/// Laurent expansion of `f` in `v − center`, known up to exponent `order` (exclusive).
///
/// Poles give a negative valuation; the valuation is the order of `f` at the
/// place `v − center` whenever that order is below `order`.
pub fn expand_at(f: &RatFunc, v: &VarId, center: &Rational, order: i64) -> Result<TruncSeries<RatFunc>> {
    if f.is_zero() {
        return Ok(TruncSeries::zero(v.clone(), center.clone(), order));
    }
    let shifted = if center.is_zero() {
        f.clone()
    } else {
        let arg = &RatFunc::var(v.clone()) + &RatFunc::constant(center.clone());
        f.substitute(v, &arg)?
    };
    let (scale, num, den) = shifted.primitive_parts();
    let to_rf = |ps: Vec<MPoly>| -> Vec<RatFunc> { ps.into_iter().map(RatFunc::from).collect() };
    let n = to_rf(num.coeffs_in(v));
    let d = to_rf(den.coeffs_in(v));
    let vn = n.iter().position(|c| !c.is_nil()).unwrap_or(0) as i64;
    let vd = d.iter().position(|c| !c.is_nil()).expect("non-zero denominator") as i64;
    let valuation = vn - vd;
    let exact = d.len() as i64 - 1 == vd && (n.len() as i64 - 1 - vd) < order;
    let len = (order - valuation).max(0) as usize;
    let inv0 = d[vd as usize].recip()?;
    let scale = RatFunc::constant(scale);
    let nk = |k: usize| n.get(vn as usize + k).cloned().unwrap_or_else(RatFunc::zero);
    let dk = |k: usize| d.get(vd as usize + k).cloned().unwrap_or_else(RatFunc::zero);
    let mut q: Vec<RatFunc> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = nk(k);
        for j in 1..=k {
            let dj = dk(j);
            if !dj.is_zero() {
                acc = &acc - &(&dj * &q[k - j]);
            }
        }
        q.push(&acc * &inv0);
    }
    let coeffs = q.into_iter().map(|c| &c * &scale).collect();
    Ok(TruncSeries::build(v.clone(), center.clone(), valuation, coeffs, order, exact))
}

fn require_power_series(b: &TruncSeries<Rational>) -> Result<()> {
    if b.valuation < 0 || !b.center.is_zero() {
        return Err(Error::Precondition("expected a power series centered at 0".into()));
    }
    Ok(())
}

/// The unique `g` with `z·g_z + g/2 = b`: `g_n = b_n / (n + 1/2)`.
pub fn solve_diff1(b: &TruncSeries<Rational>) -> Result<TruncSeries<Rational>> {
    require_power_series(b)?;
    let half = rat(1, 2);
    let coeffs = (0..b.trunc_order).map(|n| b.coeff(n) / (int(n) + &half)).collect();
    Ok(TruncSeries::build(b.var.clone(), b.center.clone(), 0, coeffs, b.trunc_order, b.exact))
}

/// Solution of `z(z−1)·g_z + ½(3z−1)·g = b − γ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Diff2Solution {
    pub g: TruncSeries<Rational>,
    pub gamma: Rational,
    /// Remainder of the division by `z − 1` (zero whenever `γ` is read off the same truncation).
    pub remainder: Rational,
    /// False when `b` is only known to truncation, so `γ` is read off a truncated sum.
    pub exact: bool,
}

/// Solve `z(z−1)·g_z + ½(3z−1)·g = b − γ` for `(g, γ)`.
///
/// With `h` from [`solve_diff1`], `γ = h(1)/2` and `g = (h − 2γ)/(z − 1)`;
/// the truncation order drops by one.
pub fn solve_diff2(b: &TruncSeries<Rational>) -> Result<Diff2Solution> {
    let h = solve_diff1(b)?;
    let gamma = h.sum_at(&Rational::one()) / int(2);
    let shifted = h.sub(&TruncSeries::polynomial(h.var.clone(), vec![&gamma * int(2)], h.trunc_order));
    let (g, remainder) = shifted.div_linear(&Rational::one())?;
    Ok(Diff2Solution { g, gamma, remainder, exact: b.exact })
}

/// The unique `(β, γ, h)` with `H = β + γ(z−1) + f̃·h_z + ½·f̃_z·h`.
#[derive(Clone, Debug, PartialEq)]
pub struct RepTriple {
    pub beta: Rational,
    pub gamma: Rational,
    pub h: TruncSeries<Rational>,
    /// False when `β`, `γ` were read off a truncated, non-terminating series.
    pub exact: bool,
}

/// Representation of `H` (a power series in z at 0); `h` is known to `trunc_order − 2`.
pub fn represent(big_h: &TruncSeries<Rational>) -> Result<RepTriple> {
    require_power_series(big_h)?;
    let beta = big_h.sum_at(&Rational::one());
    let minus_beta =
        big_h.sub(&TruncSeries::polynomial(big_h.var.clone(), vec![beta.clone()], big_h.trunc_order));
    let (b, rem) = minus_beta.div_linear(&Rational::one())?;
    debug_assert!(Zero::is_zero(&rem));
    let sol = solve_diff2(&b)?;
    Ok(RepTriple { beta, gamma: sol.gamma, h: sol.g, exact: big_h.exact })
}

fn poly_series(var: &VarId, coeffs: &[i64], trunc: i64) -> TruncSeries<Rational> {
    TruncSeries::polynomial(var.clone(), coeffs.iter().map(|c| int(*c)).collect(), trunc)
}

/// `β + γ(z−1) + f̃·h_z + ½·f̃_z·h`.
///
/// Known to the truncation of `h` (coefficient `k` involves `h_0..h_k` only),
/// or two orders further when `h` is an exact polynomial.
pub fn assemble(beta: &Rational, gamma: &Rational, h: &TruncSeries<Rational>) -> TruncSeries<Rational> {
    let var = h.var.clone();
    let h = if h.exact { h.extend(h.trunc_order + 2) } else { h.clone() };
    let trunc = h.trunc_order;
    let ft = poly_series(&var, &[0, 1, -2, 1], trunc + 3);
    let ft_z = poly_series(&var, &[1, -4, 3], trunc + 3);
    let base = TruncSeries::polynomial(var.clone(), vec![beta - gamma, gamma.clone()], trunc);
    let hz = h.derivative();
    // h_z is known to one order less, but f̃ vanishes at 0 so f̃·h_z regains it.
    let term1 = ft.mul(&hz);
    let term2 = ft_z.mul(&h).scale(&rat(1, 2));
    base.add(&term1).add(&term2).truncate(trunc)
}

/// `H − (β + γ(z−1) + f̃·h_z + ½·f̃_z·h)` to the common truncation.
pub fn series_residual(big_h: &TruncSeries<Rational>, rep: &RepTriple) -> TruncSeries<Rational> {
    let rebuilt = assemble(&rep.beta, &rep.gamma, &rep.h);
    big_h.sub(&rebuilt)
}

/// Residual of `z·g_z + g/2 = b`.
pub fn diff1_residual(g: &TruncSeries<Rational>, b: &TruncSeries<Rational>) -> TruncSeries<Rational> {
    let z = poly_series(&g.var, &[0, 1], g.trunc_order + 1);
    let lhs = z.mul(&g.derivative()).add(&g.scale(&rat(1, 2)));
    lhs.sub(b)
}

/// Residual of `z(z−1)·g_z + ½(3z−1)·g = b − γ`.
pub fn diff2_residual(sol: &Diff2Solution, b: &TruncSeries<Rational>) -> TruncSeries<Rational> {
    let g = &sol.g;
    let zz = poly_series(&g.var, &[0, -1, 1], g.trunc_order + 2);
    let lin = poly_series(&g.var, &[-1, 3], g.trunc_order + 2);
    let lhs = zz.mul(&g.derivative()).add(&lin.mul(g).scale(&rat(1, 2)));
    let rhs = b.sub(&TruncSeries::polynomial(g.var.clone(), vec![sol.gamma.clone()], b.trunc_order));
    lhs.sub(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> VarId {
        VarId::z()
    }

    fn poly(c: &[i64], t: i64) -> TruncSeries<Rational> {
        poly_series(&z(), c, t)
    }

    #[test]
    fn diff1_examples() {
        assert_eq!(solve_diff1(&poly(&[1], 8)).unwrap().coeff(0), int(2));
        let g = solve_diff1(&poly(&[1, 1], 8)).unwrap();
        assert_eq!((g.coeff(0), g.coeff(1)), (int(2), rat(2, 3)));
        let g = solve_diff1(&poly(&[0, 0, 0, 1], 8)).unwrap();
        assert_eq!(g.coeff(3), rat(2, 7));
        assert_eq!(g.valuation(), 3);
    }

    #[test]
    fn diff2_examples() {
        let s = solve_diff2(&poly(&[0], 8)).unwrap();
        assert!(s.g.is_zero() && Zero::is_zero(&s.gamma));
        // g = 0 forces γ = b.
        let s = solve_diff2(&poly(&[-5], 8)).unwrap();
        assert!(s.g.is_zero());
        assert_eq!(s.gamma, int(-5));
        let b = poly(&[-1, 3], 8);
        let s = solve_diff2(&b).unwrap();
        assert_eq!(s.g, TruncSeries::polynomial(z(), vec![int(2)], 7));
        assert!(Zero::is_zero(&s.gamma));
        assert!(diff2_residual(&s, &b).truncate(6).is_zero());
    }

    #[test]
    fn represent_examples() {
        let r = represent(&poly(&[7], 10)).unwrap();
        assert_eq!((r.beta.clone(), r.gamma.clone()), (int(7), int(0)));
        assert!(r.h.is_zero());
        let r = represent(&poly(&[-1, 1], 10)).unwrap();
        assert_eq!((r.beta.clone(), r.gamma.clone()), (int(0), int(1)));
        assert!(r.h.is_zero());
        let half_ftz = TruncSeries::polynomial(z(), vec![rat(1, 2), int(-2), rat(3, 2)], 10);
        let r = represent(&half_ftz).unwrap();
        assert_eq!((r.beta.clone(), r.gamma.clone()), (int(0), int(0)));
        assert_eq!(r.h, TruncSeries::polynomial(z(), vec![int(1)], 8));
    }

    #[test]
    fn residual_examples() {
        let one = poly(&[1], 10);
        let rep = RepTriple { beta: int(1), gamma: int(0), h: TruncSeries::zero(z(), int(0), 8), exact: true };
        assert!(series_residual(&one, &rep).is_zero());
        let r = series_residual(&poly(&[-1, 1], 10), &rep);
        assert_eq!(r, poly(&[-2, 1], 10));
    }

    #[test]
    fn expansions() {
        let f: RatFunc = "1/(z-1)".parse().unwrap();
        let s = expand_at(&f, &z(), &int(1), 4).unwrap();
        assert_eq!(s.valuation(), -1);
        assert_eq!(s.coeff(-1), RatFunc::one());
        assert!(s.coeffs()[1..].iter().all(|c| c.is_zero()));
        let ft: RatFunc = "z*(z-1)^2".parse().unwrap();
        let s = expand_at(&ft, &z(), &int(1), 6).unwrap();
        assert_eq!(s.valuation(), 2);
        assert_eq!(s.coeffs(), &[RatFunc::one(), RatFunc::one(), RatFunc::zero(), RatFunc::zero()]);
        assert!(s.is_exact());
    }
}
