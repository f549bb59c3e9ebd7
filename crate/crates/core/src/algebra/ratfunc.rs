use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::gcd::{gcd, gcd_cofactors};
use super::mpoly::{owned_ops, MPoly, Rational};
use super::monomial::{self, MAX_VARS};
use super::var::{self, VarId, VarSet};
use super::zpoly::ZPoly;
use crate::error::{Error, Result};

/// Rational function over ℚ in normal form.
///
/// Internally the value is `scale · N / D` with `N`, `D` primitive integer
/// polynomials with positive leading coefficients and `gcd(N, D) = 1`, so two
/// equal functions are always structurally equal. [`RatFunc::num`] and
/// [`RatFunc::den`] present the same data with the denominator's graded-lex
/// leading coefficient scaled to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    vars: VarSet,
    scale: Rational,
    num: ZPoly,
    den: ZPoly,
}

fn remap_to(p: &ZPoly, from: &[VarId], to: &VarSet) -> ZPoly {
    if from.len() == to.len() {
        return ZPoly { nvars: to.len(), terms: p.terms.clone() };
    }
    let map: Vec<usize> = from.iter().map(|v| to.binary_search(v).unwrap()).collect();
    p.remap(to.len(), &map)
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { vars: var::empty_vars(), scale: Rational::zero(), num: ZPoly::zero(0), den: ZPoly::one(0) }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { vars: var::empty_vars(), scale: c, num: ZPoly::one(0), den: ZPoly::one(0) }
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: VarId) -> Self {
        MPoly::var(v).into()
    }

    /// Normalized fraction `num / den`.
    pub fn new(num: &MPoly, den: &MPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let (vars, _, _) = var::union(num.vars(), den.vars());
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len()));
        }
        let (ln, n) = num.to_zpoly(&vars);
        let (ld, d) = den.to_zpoly(&vars);
        Ok(Self::from_parts(vars, Rational::new(ld, ln), n, d))
    }

    /// Normalize `scale · n / d` (cancels common factors).
    fn from_parts(vars: VarSet, scale: Rational, n: ZPoly, d: ZPoly) -> Self {
        assert!(!d.is_zero(), "zero denominator");
        if n.is_zero() || scale.is_zero() {
            return Self::zero();
        }
        let (_, n1, d1) = gcd_cofactors(&n, &d);
        Self::from_coprime(vars, scale, n1, d1)
    }

    /// Normalize `scale · n / d` when `n` and `d` are already coprime up to constants.
    fn from_coprime(vars: VarSet, scale: Rational, n: ZPoly, d: ZPoly) -> Self {
        if n.is_zero() || scale.is_zero() {
            return Self::zero();
        }
        let (un, n) = n.primitive();
        let (ud, d) = d.primitive();
        let scale = scale * Rational::new(un, ud);
        RatFunc { vars, scale, num: n, den: d }.compact()
    }

    fn compact(self) -> Self {
        let mut occ = self.num.occurring();
        for (o, d) in occ.iter_mut().zip(self.den.occurring()) {
            *o |= d;
        }
        if occ.iter().all(|x| *x) {
            return self;
        }
        let keep: Vec<usize> = (0..occ.len()).filter(|&i| occ[i]).collect();
        let vars: Vec<VarId> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let shrink = |p: &ZPoly| {
            let terms = p
                .terms
                .iter()
                .map(|(k, c)| {
                    let e: Vec<u32> = keep.iter().map(|&i| monomial::exponent(*k, i)).collect();
                    (monomial::pack(&e), c.clone())
                })
                .collect();
            ZPoly { nvars: keep.len(), terms }
        };
        RatFunc { num: shrink(&self.num), den: shrink(&self.den), vars: vars.into(), scale: self.scale }
    }

    fn aligned(&self, other: &Self) -> (VarSet, [ZPoly; 4]) {
        let (vars, _, _) = var::union(&self.vars, &other.vars);
        assert!(vars.len() <= MAX_VARS, "too many variables");
        let parts = [
            remap_to(&self.num, &self.vars, &vars),
            remap_to(&self.den, &self.vars, &vars),
            remap_to(&other.num, &other.vars, &vars),
            remap_to(&other.den, &other.vars, &vars),
        ];
        (vars, parts)
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.scale.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.scale.is_one() && self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.vars.is_empty().then(|| self.scale.clone())
    }

    pub fn as_polynomial(&self) -> Option<MPoly> {
        self.is_polynomial().then(|| self.num())
    }

    fn den_lc(&self) -> Rational {
        Rational::from_integer(self.den.lc().clone())
    }

    /// Numerator, scaled so that [`RatFunc::den`] has leading coefficient 1.
    pub fn num(&self) -> MPoly {
        MPoly::from_zpoly(&self.vars, &self.num, &(&self.scale / self.den_lc()))
    }

    /// Denominator with graded-lex leading coefficient 1.
    pub fn den(&self) -> MPoly {
        MPoly::from_zpoly(&self.vars, &self.den, &self.den_lc().recip())
    }

    /// Primitive integer numerator and denominator as rational polynomials,
    /// with `self = scale · num / den`.
    pub fn primitive_parts(&self) -> (Rational, MPoly, MPoly) {
        let one = Rational::one();
        (
            self.scale.clone(),
            MPoly::from_zpoly(&self.vars, &self.num, &one),
            MPoly::from_zpoly(&self.vars, &self.den, &one),
        )
    }

    pub fn num_terms(&self) -> usize {
        self.num.len()
    }

    pub fn den_terms(&self) -> usize {
        self.den.len()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc {
            vars: self.vars.clone(),
            scale: self.scale.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn scale_by(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { scale: &self.scale * c, ..self.clone() }
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.recip().expect("negative power of zero") } else { self.clone() };
        let e = e.unsigned_abs();
        if e == 0 {
            return Self::one();
        }
        if base.is_zero() {
            return Self::zero();
        }
        RatFunc {
            vars: base.vars.clone(),
            scale: num_traits::pow(base.scale.clone(), e as usize),
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
    }

    pub fn derivative(&self, v: &VarId) -> Self {
        let Ok(i) = self.vars.binary_search(v) else {
            return Self::zero();
        };
        let np = self.num.derivative(i);
        let dp = self.den.derivative(i);
        if dp.is_zero() {
            return Self::from_parts(self.vars.clone(), self.scale.clone(), np, self.den.clone());
        }
        let (_, dg, dpg) = gcd_cofactors(&self.den, &dp);
        let t = np.mul(&dg).sub(&self.num.mul(&dpg));
        if t.is_zero() {
            return Self::zero();
        }
        // Any common factor of t and den·dg divides den.
        let g = gcd(&t, &self.den);
        let (t, d1) = if g.is_one() {
            (t, self.den.clone())
        } else {
            (t.div_exact(&g).unwrap(), self.den.div_exact(&g).unwrap())
        };
        let den = d1.mul(&dg);
        Self::from_parts(self.vars.clone(), self.scale.clone(), t, den)
    }

    /// Compose: replace `v` by `g`.
    pub fn substitute(&self, v: &VarId, g: &RatFunc) -> Result<Self> {
        if self.vars.binary_search(v).is_err() {
            return Ok(self.clone());
        }
        let (vars, [n, d, gn, gd]) = self.aligned(g);
        let i = vars.binary_search(v).unwrap();
        if g.is_zero() {
            let nv = n.coeffs_in(i).swap_remove(0);
            let dv = d.coeffs_in(i).swap_remove(0);
            if dv.is_zero() {
                return Err(Error::DenominatorVanishes);
            }
            return Ok(Self::from_parts(vars, self.scale.clone(), nv, dv));
        }
        let gn = gn.scale(g.scale.numer());
        let gd = gd.scale(g.scale.denom());
        let (nh, mn) = n.compose_homogeneous(i, &gn, &gd);
        let (dh, md) = d.compose_homogeneous(i, &gn, &gd);
        if dh.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        let (num, den) = if md >= mn {
            (nh.mul(&gd.pow(md - mn)), dh)
        } else {
            (nh, dh.mul(&gd.pow(mn - md)))
        };
        Ok(Self::from_parts(vars, self.scale.clone(), num, den))
    }

    /// Specialize `v = c`; `None` when the function has a pole along `v = c`.
    ///
    /// Normal forms are coprime, so a common `(v - c)` factor has already been
    /// cancelled and the pole test is exactly "does `v - c` divide the denominator".
    pub fn evaluate_partial(&self, v: &VarId, c: &Rational) -> Option<Self> {
        match self.substitute(v, &RatFunc::constant(c.clone())) {
            Ok(r) => Some(r),
            Err(Error::DenominatorVanishes) => None,
            Err(e) => unreachable!("{e}"),
        }
    }

    /// Substitute constants for every variable in turn; `None` on a pole.
    pub fn evaluate(&self, point: &[(VarId, Rational)]) -> Option<Rational> {
        let mut f = self.clone();
        for (v, c) in point {
            f = f.evaluate_partial(v, c)?;
        }
        f.as_constant()
    }

    pub fn degree_num(&self, v: &VarId) -> u32 {
        self.vars.binary_search(v).map(|i| self.num.degree_in(i)).unwrap_or(0)
    }

    pub fn degree_den(&self, v: &VarId) -> u32 {
        self.vars.binary_search(v).map(|i| self.den.degree_in(i)).unwrap_or(0)
    }

    /// Largest coefficient size in bits across numerator and denominator.
    pub fn max_coeff_bits(&self) -> u64 {
        self.num.max_coeff_bits().max(self.den.max_coeff_bits())
    }
}

impl From<MPoly> for RatFunc {
    fn from(p: MPoly) -> Self {
        RatFunc::new(&p, &MPoly::one()).unwrap()
    }
}

impl From<&MPoly> for RatFunc {
    fn from(p: &MPoly) -> Self {
        RatFunc::new(p, &MPoly::one()).unwrap()
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::integer(n)
    }
}

impl From<VarId> for RatFunc {
    fn from(v: VarId) -> Self {
        RatFunc::var(v)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (vars, [an, ad, bn, bd]) = self.aligned(rhs);
        let (la, lb) = (self.scale.denom(), rhs.scale.denom());
        let l = la.lcm(lb);
        let ca = self.scale.numer() * (&l / la);
        let cb = rhs.scale.numer() * (&l / lb);
        let inv_l = Rational::new(BigInt::one(), l);
        if ad == bd {
            let t = an.scale(&ca).add(&bn.scale(&cb));
            if ad.is_one() {
                return RatFunc::from_coprime(vars, inv_l, t, ad);
            }
            return RatFunc::from_parts(vars, inv_l, t, ad);
        }
        let (d, da, db) = gcd_cofactors(&ad, &bd);
        let t = an.mul(&db).scale(&ca).add(&bn.mul(&da).scale(&cb));
        if t.is_zero() {
            return RatFunc::zero();
        }
        if d.is_one() {
            return RatFunc::from_coprime(vars, inv_l, t, da.mul(&db));
        }
        let (_, t, d) = gcd_cofactors(&t, &d);
        RatFunc::from_coprime(vars, inv_l, t, d.mul(&da).mul(&db))
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { scale: -self.scale.clone(), ..self.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        let (vars, [an, ad, bn, bd]) = self.aligned(rhs);
        let (_, an, bd) = gcd_cofactors(&an, &bd);
        let (_, bn, ad) = gcd_cofactors(&bn, &ad);
        RatFunc::from_coprime(vars, &self.scale * &rhs.scale, an.mul(&bn), ad.mul(&bd))
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; see [`RatFunc::checked_div`].
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

owned_ops!(RatFunc, Add add, Sub sub, Mul mul, Div div);

impl fmt::Display for RatFunc {
    /// Canonical string: `num` or `(num)/(den)` with the normalized parts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num())
        } else {
            write!(f, "({})/({})", self.num(), self.den())
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl RatFunc {
    /// Sign of the numerator's leading coefficient relative to the normalized denominator.
    pub fn leading_sign_negative(&self) -> bool {
        self.scale.is_negative()
    }
}
