//! Sparse polynomials with integer coefficients.
//!
//! This is the internal workhorse behind [`MPoly`](super::MPoly) and
//! [`RatFunc`](super::RatFunc): the heavy operations (products, exact
//! division, GCD) run on integer coefficients, with rational content kept
//! separately by the callers.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZPoly {
    pub nvars: usize,
    /// Strictly descending packed keys, no zero coefficients.
    pub terms: Vec<(u128, BigInt)>,
}

const DENSE_LIMIT: usize = 1 << 22;

impl ZPoly {
    pub fn zero(nvars: usize) -> Self {
        ZPoly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            ZPoly { nvars, terms: vec![(0, c)] }
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn monomial(nvars: usize, key: u128, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            ZPoly { nvars, terms: vec![(key, c)] }
        }
    }

    /// Build from unsorted terms, combining duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, mut terms: Vec<(u128, BigInt)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(u128, BigInt)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((k, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        ZPoly { nvars, terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            if a[i].0 > b[j].0 {
                out.push(a[i].clone());
                i += 1;
            } else if a[i].0 < b[j].0 {
                let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        ZPoly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        ZPoly { nvars: self.nvars, terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect() }
    }

    pub fn mul_term(&self, key: u128, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        ZPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (monomial::mul(*k, key), x * c)).collect(),
        }
    }

    pub fn max_degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.nvars];
        for (k, _) in &self.terms {
            for (i, di) in d.iter_mut().enumerate() {
                *di = (*di).max(monomial::exponent(*k, i));
            }
        }
        d
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(k, _)| monomial::exponent(*k, var)).max().unwrap_or(0)
    }

    /// Bitmask of variables that occur.
    pub fn occurring(&self) -> Vec<bool> {
        let mut acc = 0u128;
        for (k, _) in &self.terms {
            acc |= *k;
        }
        (0..self.nvars).map(|i| monomial::exponent(acc, i) != 0).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let (a, b) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        if b.len() == 1 {
            return a.mul_term(b.terms[0].0, &b.terms[0].1);
        }
        if a.len() * b.len() <= 64 {
            let mut terms = Vec::with_capacity(a.len() * b.len());
            for (ka, ca) in &a.terms {
                for (kb, cb) in &b.terms {
                    terms.push((monomial::mul(*ka, *kb), ca * cb));
                }
            }
            return Self::from_terms(self.nvars, terms);
        }
        let small = small_coefficient_budget(a, b);
        match dense_layout(a, b) {
            Some(layout) if small => mul_dense_i128(a, b, &layout),
            Some(layout) => mul_dense(a, b, &layout),
            None => mul_hashed(a, b),
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Split into `unit * primitive` where the primitive part has positive
    /// leading coefficient. The zero polynomial gives unit 0.
    pub fn primitive(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (BigInt::zero(), self.clone());
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if g.is_one() {
            return (g, self.clone());
        }
        (g.clone(), self.div_int_exact(&g))
    }

    pub fn div_int_exact(&self, c: &BigInt) -> Self {
        ZPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| {
                    debug_assert!((x % c).is_zero());
                    (*k, x / c)
                })
                .collect(),
        }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self` over the integers.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if d.len() > 1 && self.len() * d.len() > MODULAR_DIV_THRESHOLD {
            if let Some(r) = super::gcd::div_exact_modular(self, d) {
                return r;
            }
        }
        self.div_exact_sparse(d)
    }

    fn div_exact_sparse(&self, d: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let (dk, dc) = (d.terms[0].0, &d.terms[0].1);
        if d.len() == 1 {
            let mut out = Vec::with_capacity(self.len());
            for (k, c) in &self.terms {
                if !monomial::divides(dk, *k) {
                    return None;
                }
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                out.push((monomial::div(*k, dk), q));
            }
            return Some(ZPoly { nvars: self.nvars, terms: out });
        }
        if !monomial::divides(dk, self.terms[0].0) || self.len() < 2 {
            return None;
        }
        let mut rem: BTreeMap<u128, BigInt> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((k, c)) = rem.pop_last() {
            if !monomial::divides(dk, k) {
                return None;
            }
            let (q, r) = c.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let qk = monomial::div(k, dk);
            for (tk, tc) in &d.terms[1..] {
                let key = monomial::mul(qk, *tk);
                let prod = &q * tc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= prod;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-prod);
                    }
                }
            }
            quot.push((qk, q));
        }
        Some(ZPoly { nvars: self.nvars, terms: quot })
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let unit = monomial::var_power(var, 1);
        let terms = self
            .terms
            .iter()
            .filter_map(|(k, c)| {
                let e = monomial::exponent(*k, var);
                (e > 0).then(|| (monomial::div(*k, unit), c * BigInt::from(e)))
            })
            .collect();
        ZPoly { nvars: self.nvars, terms }
    }

    /// Coefficients with respect to `var`: entry `i` is the coefficient of `var^i`
    /// (with `var` removed from the keys).
    pub fn coeffs_in(&self, var: usize) -> Vec<ZPoly> {
        let deg = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(u128, BigInt)>> = vec![Vec::new(); deg + 1];
        for (k, c) in &self.terms {
            let (rest, e) = monomial::split_off(*k, var);
            parts[e as usize].push((rest, c.clone()));
        }
        parts.into_iter().map(|t| ZPoly::from_terms(self.nvars, t)).collect()
    }

    /// `Σ coeff_i · num^i · den^(m-i)` with `m = deg_var(self)`, i.e. the
    /// numerator of `self(var = num/den)` over the denominator `den^m`.
    pub fn compose_homogeneous(&self, var: usize, num: &ZPoly, den: &ZPoly) -> (ZPoly, u32) {
        let coeffs = self.coeffs_in(var);
        let m = coeffs.len() - 1;
        let mut num_pows = Vec::with_capacity(m + 1);
        let mut den_pows = Vec::with_capacity(m + 1);
        num_pows.push(ZPoly::one(self.nvars));
        den_pows.push(ZPoly::one(self.nvars));
        for i in 1..=m {
            num_pows.push(num_pows[i - 1].mul(num));
            den_pows.push(den_pows[i - 1].mul(den));
        }
        let mut acc = ZPoly::zero(self.nvars);
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&num_pows[i]).mul(&den_pows[m - i]));
        }
        (acc, m as u32)
    }

    /// Move to a new variable layout (`map[i]` is the new position of variable `i`).
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        let monotone = map.windows(2).all(|w| w[0] < w[1]);
        let terms: Vec<(u128, BigInt)> =
            self.terms.iter().map(|(k, c)| (monomial::remap(*k, map), c.clone())).collect();
        if monotone {
            ZPoly { nvars, terms }
        } else {
            ZPoly::from_terms(nvars, terms)
        }
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }
}

struct DenseLayout {
    dims: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

fn dense_layout(a: &ZPoly, b: &ZPoly) -> Option<DenseLayout> {
    let da = a.max_degrees();
    let db = b.max_degrees();
    let dims: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y + 1) as usize).collect();
    let mut size = 1usize;
    for d in &dims {
        size = size.checked_mul(*d)?;
        if size > DENSE_LIMIT {
            return None;
        }
    }
    // Dense buffers only pay off when the product is not extremely sparse.
    if size > 64 * a.len() * b.len() {
        return None;
    }
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    Some(DenseLayout { dims, strides, size })
}

impl DenseLayout {
    fn index(&self, key: u128) -> usize {
        self.strides
            .iter()
            .enumerate()
            .map(|(i, s)| monomial::exponent(key, i) as usize * s)
            .sum()
    }

    fn key(&self, mut idx: usize) -> u128 {
        let mut exps = vec![0u32; self.dims.len()];
        for (i, s) in self.strides.iter().enumerate() {
            exps[i] = (idx / s) as u32;
            idx %= s;
        }
        monomial::pack(&exps)
    }
}

fn small_coefficient_budget(a: &ZPoly, b: &ZPoly) -> bool {
    let log_terms = 64 - (a.len().min(b.len()) as u64).leading_zeros() as u64;
    a.max_coeff_bits() + b.max_coeff_bits() + log_terms + 2 < 126
}

fn mul_dense_i128(a: &ZPoly, b: &ZPoly, layout: &DenseLayout) -> ZPoly {
    let mut acc = vec![0i128; layout.size];
    let bi: Vec<(usize, i128)> =
        b.terms.iter().map(|(k, c)| (layout.index(*k), c.to_i128().unwrap())).collect();
    for (ka, ca) in &a.terms {
        let ia = layout.index(*ka);
        let ca = ca.to_i128().unwrap();
        for (ib, cb) in &bi {
            acc[ia + ib] += ca * cb;
        }
    }
    let terms = acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| *c != 0)
        .map(|(i, c)| (layout.key(i), BigInt::from(c)))
        .collect();
    ZPoly::from_terms(a.nvars, terms)
}

/// Above this many term pairs, division goes through the modular path.
const MODULAR_DIV_THRESHOLD: usize = 4096;

/// Budget (in 64-bit words, per sign) for the limb accumulators of `mul_dense`.
const LIMB_BUDGET: usize = 1 << 24;

fn limbs(c: &BigInt) -> (bool, Vec<u64>) {
    (c.sign() == Sign::Minus, c.magnitude().to_u64_digits())
}

/// `acc += x·y` on little-endian limbs; `acc` must be wide enough.
#[inline]
fn mac(acc: &mut [u64], x: &[u64], y: &[u64]) {
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        let mut carry: u128 = 0;
        for (j, &yj) in y.iter().enumerate() {
            let t = acc[i + j] as u128 + (xi as u128) * (yj as u128) + carry;
            acc[i + j] = t as u64;
            carry = t >> 64;
        }
        let mut k = i + y.len();
        while carry != 0 {
            let t = acc[k] as u128 + carry;
            acc[k] = t as u64;
            carry = t >> 64;
            k += 1;
        }
    }
}

fn from_limbs(l: &[u64]) -> BigUint {
    let mut digits = Vec::with_capacity(l.len() * 2);
    for x in l {
        digits.push(*x as u32);
        digits.push((*x >> 32) as u32);
    }
    BigUint::new(digits)
}

/// Dense product with fixed-width limb accumulators (one for each sign of
/// the partial products), avoiding a heap allocation per coefficient product.
fn mul_dense(a: &ZPoly, b: &ZPoly, layout: &DenseLayout) -> ZPoly {
    let la = a.max_coeff_bits().div_ceil(64) as usize;
    let lb = b.max_coeff_bits().div_ceil(64) as usize;
    let w = la + lb + 1;
    if layout.size.saturating_mul(w) > LIMB_BUDGET {
        return mul_hashed(a, b);
    }
    let mut pos = vec![0u64; layout.size * w];
    let mut neg = vec![0u64; layout.size * w];
    let bl: Vec<(usize, bool, Vec<u64>)> = b
        .terms
        .iter()
        .map(|(k, c)| {
            let (s, l) = limbs(c);
            (layout.index(*k), s, l)
        })
        .collect();
    for (ka, ca) in &a.terms {
        let ia = layout.index(*ka);
        let (sa, xa) = limbs(ca);
        for (ib, sb, xb) in &bl {
            let idx = (ia + ib) * w;
            let acc = if sa != *sb { &mut neg } else { &mut pos };
            mac(&mut acc[idx..idx + w], &xa, xb);
        }
    }
    let mut terms = Vec::new();
    for i in 0..layout.size {
        let (p, n) = (&pos[i * w..(i + 1) * w], &neg[i * w..(i + 1) * w]);
        if p == n {
            continue;
        }
        let c = BigInt::from_biguint(Sign::Plus, from_limbs(p)) - BigInt::from_biguint(Sign::Plus, from_limbs(n));
        terms.push((layout.key(i), c));
    }
    ZPoly::from_terms(a.nvars, terms)
}

fn mul_hashed(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut acc: HashMap<u128, BigInt> = HashMap::with_capacity(a.len() * 4);
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            *acc.entry(monomial::mul(*ka, *kb)).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    ZPoly::from_terms(a.nvars, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(nvars: usize, terms: &[(&[u32], i64)]) -> ZPoly {
        ZPoly::from_terms(
            nvars,
            terms.iter().map(|(e, c)| (monomial::pack(e), BigInt::from(*c))).collect(),
        )
    }

    #[test]
    fn product_and_exact_division() {
        // (z + d + 1)(z - d)
        let a = p(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        let b = p(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&b), Some(a.clone()));
        assert_eq!(ab.add(&ZPoly::one(2)).div_exact(&a), None);
    }

    fn pseudo_random(nvars: usize, deg: u32, seed: u64, big: bool) -> ZPoly {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as i64 % 2001 - 1000
        };
        let mut terms = Vec::new();
        for i in 0..=deg {
            for j in 0..=deg / 2 {
                let e: Vec<u32> = if nvars == 2 { vec![i, j] } else { vec![i, j, i % 2] };
                let mut c = BigInt::from(next());
                if big {
                    c = c * BigInt::from(next()).pow(6) + BigInt::from(next());
                }
                terms.push((monomial::pack(&e), c));
            }
        }
        ZPoly::from_terms(nvars, terms)
    }

    #[test]
    fn large_exact_division_both_paths() {
        for (nvars, seed) in [(2, 1u64), (2, 2), (3, 3)] {
            let a = pseudo_random(nvars, 30, seed, true);
            let b = pseudo_random(nvars, 24, seed + 10, false);
            let ab = a.mul(&b);
            assert!(ab.len() * a.len() > MODULAR_DIV_THRESHOLD);
            assert_eq!(ab.div_exact(&a), Some(b.clone()));
            assert_eq!(ab.div_exact(&b), Some(a.clone()));
            assert_eq!(ab.div_exact_sparse(&b), Some(a.clone()));
            let off = ab.add(&ZPoly::one(nvars));
            assert_eq!(off.div_exact(&a), None);
            // divisible over ℚ but not over ℤ
            let three_b = b.scale(&BigInt::from(3));
            assert_eq!(ab.div_exact(&three_b), None);
        }
    }

    #[test]
    fn dense_and_hashed_paths_agree() {
        let mut terms = Vec::new();
        for i in 0..12u32 {
            for j in 0..5u32 {
                let c = (i as i64 * 7 - j as i64 * 3) % 11 + 1;
                terms.push((monomial::pack(&[i, j]), BigInt::from(c)));
            }
        }
        let a = ZPoly::from_terms(2, terms);
        let big = a.scale(&BigInt::from(10).pow(40));
        let layout = dense_layout(&a, &a).unwrap();
        let d1 = mul_dense_i128(&a, &a, &layout);
        let d2 = mul_hashed(&a, &a);
        assert_eq!(d1, d2);
        let d3 = mul_dense(&big, &a, &layout);
        assert_eq!(d3, d2.scale(&BigInt::from(10).pow(40)));
    }

    #[test]
    fn derivative_and_coefficients() {
        // z^3 + d z^2 + z
        let f = p(2, &[(&[3, 0], 1), (&[2, 1], 1), (&[1, 0], 1)]);
        let fz = f.derivative(0);
        assert_eq!(fz, p(2, &[(&[2, 0], 3), (&[1, 1], 2), (&[0, 0], 1)]));
        let c = f.coeffs_in(0);
        assert_eq!(c.len(), 4);
        assert!(c[0].is_zero());
        assert_eq!(c[2], p(2, &[(&[0, 1], 1)]));
    }

    #[test]
    fn primitive_part_sign() {
        let f = p(1, &[(&[2], -4), (&[0], 6)]);
        let (u, pp) = f.primitive();
        assert_eq!(u, BigInt::from(-2));
        assert_eq!(pp, p(1, &[(&[2], 2), (&[0], -3)]));
    }
}
