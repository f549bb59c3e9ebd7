use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{self, MAX_VARS};
use super::var::{self, VarId, VarSet};
use super::zpoly::ZPoly;

/// Exact rational number.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept in descending graded-lexicographic order; the variable set
/// is exactly the variables that occur.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: VarSet,
    terms: Vec<(u128, Rational)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { vars: var::empty_vars(), terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(0, c)] };
        MPoly { vars: var::empty_vars(), terms }
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn var(v: VarId) -> Self {
        MPoly { vars: vec![v].into(), terms: vec![(monomial::var_power(0, 1), Rational::one())] }
    }

    /// Build from `(exponents, coefficient)` pairs; exponents follow `vars` order.
    pub fn from_terms(vars: &[VarId], terms: Vec<(Vec<u32>, Rational)>) -> Self {
        let mut sorted: Vec<VarId> = vars.to_vec();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), vars.len(), "duplicate variables");
        assert!(vars.len() <= MAX_VARS, "too many variables");
        let map: Vec<usize> = vars.iter().map(|v| sorted.binary_search(v).unwrap()).collect();
        let mut packed: Vec<(u128, Rational)> = terms
            .into_iter()
            .map(|(e, c)| {
                let mut ex = vec![0u32; vars.len()];
                for (i, x) in e.iter().enumerate() {
                    ex[map[i]] = *x;
                }
                (monomial::pack(&ex), c)
            })
            .collect();
        packed.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(u128, Rational)> = Vec::new();
        for (k, c) in packed {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MPoly { vars: sorted.into(), terms: out }.compact()
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(exponents in vars() order, coefficient)`, descending graded-lex.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &Rational)> + '_ {
        let n = self.vars.len();
        self.terms.iter().map(move |(k, c)| (monomial::unpack(*k, n), c))
    }

    /// Graded-lex leading coefficient (zero for the zero polynomial).
    pub fn leading_coefficient(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self, v: &VarId) -> u32 {
        match self.vars.binary_search(v) {
            Ok(i) => self.terms.iter().map(|(k, _)| monomial::exponent(*k, i)).max().unwrap_or(0),
            Err(_) => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(k, _)| monomial::total_degree(*k)).unwrap_or(0)
    }

    /// Largest coefficient size in bits (numerator or denominator).
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0)
    }

    fn compact(self) -> Self {
        let mut acc = 0u128;
        for (k, _) in &self.terms {
            acc |= *k;
        }
        let keep: Vec<usize> =
            (0..self.vars.len()).filter(|&i| monomial::exponent(acc, i) != 0).collect();
        if keep.len() == self.vars.len() {
            return self;
        }
        let mut map = vec![0usize; self.vars.len()];
        for (new, &old) in keep.iter().enumerate() {
            map[old] = new;
        }
        let vars: Vec<VarId> = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(k, c)| {
                let exps = monomial::unpack(k, map.len());
                let e: Vec<u32> = keep.iter().map(|&i| exps[i]).collect();
                (monomial::pack(&e), c)
            })
            .collect();
        MPoly { vars: vars.into(), terms }
    }

    fn remapped(&self, map: &[usize]) -> Vec<(u128, Rational)> {
        self.terms.iter().map(|(k, c)| (monomial::remap(*k, map), c.clone())).collect()
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let (vars, ma, mb) = var::union(&self.vars, &other.vars);
        assert!(vars.len() <= MAX_VARS, "too many variables");
        let a = self.remapped(&ma);
        let b = other.remapped(&mb);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 > b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 > a[i].0 {
                let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        MPoly { vars, terms: out }.compact()
    }

    /// `(denominator, integer polynomial)` with `self = poly / denominator`, over `vars`.
    pub(crate) fn to_zpoly(&self, vars: &[VarId]) -> (BigInt, ZPoly) {
        let map: Vec<usize> =
            self.vars.iter().map(|v| vars.binary_search(v).expect("variable in layout")).collect();
        let mut l = BigInt::one();
        for (_, c) in &self.terms {
            l = l.lcm(c.denom());
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| (monomial::remap(*k, &map), c.numer() * (&l / c.denom())))
            .collect();
        let monotone = map.windows(2).all(|w| w[0] < w[1]);
        let z = if monotone {
            ZPoly { nvars: vars.len(), terms }
        } else {
            ZPoly::from_terms(vars.len(), terms)
        };
        (l, z)
    }

    pub(crate) fn from_zpoly(vars: &VarSet, p: &ZPoly, scale: &Rational) -> Self {
        let terms = p.terms.iter().map(|(k, c)| (*k, scale * Rational::from_integer(c.clone()))).collect();
        MPoly { vars: vars.clone(), terms }.compact()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect() }
    }

    pub fn derivative(&self, v: &VarId) -> Self {
        let Ok(i) = self.vars.binary_search(v) else {
            return MPoly::zero();
        };
        let unit = monomial::var_power(i, 1);
        let terms = self
            .terms
            .iter()
            .filter_map(|(k, c)| {
                let e = monomial::exponent(*k, i);
                (e > 0).then(|| (monomial::div(*k, unit), c * int(e as i64)))
            })
            .collect();
        MPoly { vars: self.vars.clone(), terms }.compact()
    }

    /// Substitute the constant `c` for `v`.
    pub fn eval(&self, v: &VarId, c: &Rational) -> Self {
        let Ok(i) = self.vars.binary_search(v) else {
            return self.clone();
        };
        let mut out: Vec<(u128, Rational)> = Vec::with_capacity(self.terms.len());
        for (k, x) in &self.terms {
            let (rest, e) = monomial::split_off(*k, i);
            out.push((rest, x * num_traits::pow(c.clone(), e as usize)));
        }
        out.sort_by(|a, b| b.0.cmp(&a.0));
        let mut merged: Vec<(u128, Rational)> = Vec::new();
        for (k, x) in out {
            match merged.last_mut() {
                Some((lk, lx)) if *lk == k => *lx += x,
                _ => merged.push((k, x)),
            }
        }
        merged.retain(|(_, x)| !x.is_zero());
        MPoly { vars: self.vars.clone(), terms: merged }.compact()
    }

    /// Coefficients with respect to `v`: entry `i` multiplies `v^i`.
    pub fn coeffs_in(&self, v: &VarId) -> Vec<MPoly> {
        let Ok(i) = self.vars.binary_search(v) else {
            return vec![self.clone()];
        };
        let deg = self.degree(v) as usize;
        let mut parts: Vec<Vec<(u128, Rational)>> = vec![Vec::new(); deg + 1];
        for (k, c) in &self.terms {
            let (rest, e) = monomial::split_off(*k, i);
            parts[e as usize].push((rest, c.clone()));
        }
        parts
            .into_iter()
            .map(|mut t| {
                t.sort_by(|a, b| b.0.cmp(&a.0));
                MPoly { vars: self.vars.clone(), terms: t }.compact()
            })
            .collect()
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.combine(rhs, false)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.combine(rhs, true)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect() }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let (vars, _, _) = var::union(&self.vars, &rhs.vars);
        assert!(vars.len() <= MAX_VARS, "too many variables");
        let (la, a) = self.to_zpoly(&vars);
        let (lb, b) = rhs.to_zpoly(&vars);
        let scale = Rational::new(BigInt::one(), la * lb);
        MPoly::from_zpoly(&vars, &a.mul(&b), &scale)
    }
}

macro_rules! owned_ops {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t { (&self).$m(rhs) }
        }
    )*};
}
owned_ops!(MPoly, Add add, Sub sub, Mul mul);
pub(crate) use owned_ops;

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl From<VarId> for MPoly {
    fn from(v: VarId) -> Self {
        MPoly::var(v)
    }
}

impl From<i64> for MPoly {
    fn from(n: i64) -> Self {
        MPoly::integer(n)
    }
}

pub(crate) fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MPoly {
    /// Canonical form, e.g. `z^3 + z^2*δ + z` or `-1/2*z + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (i, v) in self.vars.iter().enumerate() {
                match monomial::exponent(*k, i) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            if factors.is_empty() {
                write_rational(f, &a)?;
            } else {
                if !a.is_one() {
                    write_rational(f, &a)?;
                    f.write_str("*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> MPoly {
        MPoly::var(VarId::z())
    }
    fn d() -> MPoly {
        MPoly::var(VarId::delta())
    }

    #[test]
    fn display_is_graded_lex() {
        let f = &(&z().pow(3) + &(&d() * &z().pow(2))) + &z();
        assert_eq!(f.to_string(), "z^3 + z^2*δ + z");
        let g = &z().scale(&rat(-1, 2)) + &MPoly::integer(3);
        assert_eq!(g.to_string(), "-1/2*z + 3");
    }

    #[test]
    fn variable_sets_stay_minimal() {
        let f = &(&z() + &d()) - &d();
        assert_eq!(f.vars(), &[VarId::z()]);
        assert!((&z() - &z()).is_zero());
        assert_eq!((&z() - &z()).vars().len(), 0);
    }

    #[test]
    fn derivative_and_eval() {
        let f = &(&z().pow(3) + &(&d() * &z().pow(2))) + &z();
        let fz = f.derivative(&VarId::z());
        assert_eq!(fz.to_string(), "3*z^2 + 2*z*δ + 1");
        assert_eq!(f.eval(&VarId::z(), &int(1)).to_string(), "δ + 2");
    }
}
