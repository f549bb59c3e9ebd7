//! Arithmetic modulo word-sized primes, used by the modular GCD.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};

use super::monomial;
use super::zpoly::ZPoly;

#[inline]
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

#[inline]
pub fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powm(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13] {
        if n % q == 0 {
            return n == q;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // Bases 2, 3, 5, 7 are deterministic below 3.2e9.
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = powm(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `i`-th prime below 2^31, counting down.
pub fn prime(i: usize) -> u64 {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    let primes = PRIMES.get_or_init(|| {
        let mut v = Vec::with_capacity(1024);
        let mut n = (1u64 << 31) - 1;
        while v.len() < 1024 {
            if is_prime(n) {
                v.push(n);
            }
            n -= 2;
        }
        v
    });
    primes[i]
}

pub fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let mut r = 0u64;
    for d in c.iter_u64_digits().rev() {
        r = (((r as u128) << 64 | d as u128) % p as u128) as u64;
    }
    if c.sign() == Sign::Minus && r != 0 {
        p - r
    } else {
        r
    }
}

// ---------- dense univariate polynomials, coefficients low to high ----------

pub fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn ueval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, c| addm(mulm(acc, x, p), *c, p))
}

pub fn umul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(*x, *y, p), p);
        }
    }
    out
}

/// Quotient and remainder; `b` must be non-zero and trimmed.
pub fn udivrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = invm(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = mulm(r[i + b.len() - 1], inv, p);
        q[i] = c;
        if c != 0 {
            for (j, y) in b.iter().enumerate() {
                r[i + j] = subm(r[i + j], mulm(c, *y, p), p);
            }
        }
    }
    r.truncate(b.len() - 1);
    trim(&mut r);
    (q, r)
}

pub fn umonic(mut a: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    if let Some(&l) = a.last() {
        let inv = invm(l, p);
        for c in a.iter_mut() {
            *c = mulm(*c, inv, p);
        }
    }
    a
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn ugcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = udivrem(&x, &y, p);
        x = y;
        y = r;
    }
    umonic(x, p)
}

// ---------- sparse multivariate polynomials mod p ----------

/// Sparse polynomial over Z/p with packed keys in descending graded-lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPoly {
    pub p: u64,
    pub terms: Vec<(u128, u64)>,
}

impl PPoly {
    pub fn zero(p: u64) -> Self {
        PPoly { p, terms: Vec::new() }
    }

    pub fn from_terms(p: u64, mut terms: Vec<(u128, u64)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(u128, u64)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc = addm(*lc, c, p),
                _ => {
                    if matches!(out.last(), Some((_, 0))) {
                        out.pop();
                    }
                    out.push((k, c));
                }
            }
        }
        if matches!(out.last(), Some((_, 0))) {
            out.pop();
        }
        PPoly { p, terms: out }
    }

    pub fn from_zpoly(a: &ZPoly, p: u64) -> Self {
        let terms = a
            .terms
            .iter()
            .filter_map(|(k, c)| {
                let r = bigint_mod(c, p);
                (r != 0).then_some((*k, r))
            })
            .collect();
        PPoly { p, terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    /// Leading term in pure lexicographic order.
    pub fn lex_lead(&self) -> (u128, u64) {
        let mut best = self.terms[0];
        for t in &self.terms {
            if monomial::lex(t.0) > monomial::lex(best.0) {
                best = *t;
            }
        }
        best
    }

    pub fn scale(&self, c: u64) -> Self {
        if c == 0 {
            return PPoly::zero(self.p);
        }
        PPoly { p: self.p, terms: self.terms.iter().map(|(k, x)| (*k, mulm(*x, c, self.p))).collect() }
    }

    pub fn make_lex_monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invm(self.lex_lead().1, self.p))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let p = self.p;
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().map(|(k, c)| (*k, subm(0, *c, p))));
        PPoly::from_terms(p, t)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        PPoly::from_terms(self.p, t)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(k, _)| monomial::exponent(*k, var)).max().unwrap_or(0)
    }

    /// Substitute `var = alpha`.
    pub fn eval_var(&self, var: usize, alpha: u64) -> Self {
        let p = self.p;
        let deg = self.degree_in(var) as usize;
        let mut pows = Vec::with_capacity(deg + 1);
        pows.push(1u64);
        for i in 1..=deg {
            pows.push(mulm(pows[i - 1], alpha, p));
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let (rest, e) = monomial::split_off(*k, var);
                (rest, mulm(*c, pows[e as usize], p))
            })
            .collect();
        PPoly::from_terms(p, terms)
    }

    /// Group by the monomial in the other variables; values are dense polynomials in `var`.
    pub fn groups(&self, var: usize) -> HashMap<u128, Vec<u64>> {
        let mut g: HashMap<u128, Vec<u64>> = HashMap::new();
        for (k, c) in &self.terms {
            let (rest, e) = monomial::split_off(*k, var);
            let v = g.entry(rest).or_default();
            if v.len() <= e as usize {
                v.resize(e as usize + 1, 0);
            }
            v[e as usize] = *c;
        }
        g
    }

    pub fn from_groups(p: u64, var: usize, groups: &HashMap<u128, Vec<u64>>) -> Self {
        let mut terms = Vec::new();
        for (rest, coeffs) in groups {
            for (e, c) in coeffs.iter().enumerate() {
                if *c != 0 {
                    terms.push((monomial::mul(*rest, monomial::var_power(var, e as u32)), *c));
                }
            }
        }
        PPoly::from_terms(p, terms)
    }

    /// Multiply by a dense univariate polynomial in `var`.
    pub fn mul_univariate(&self, var: usize, u: &[u64]) -> Self {
        let p = self.p;
        let mut terms = Vec::with_capacity(self.terms.len() * u.len());
        for (k, c) in &self.terms {
            for (e, x) in u.iter().enumerate() {
                if *x != 0 {
                    terms.push((monomial::mul(*k, monomial::var_power(var, e as u32)), mulm(*c, *x, p)));
                }
            }
        }
        PPoly::from_terms(p, terms)
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let p = self.p;
        if self.is_zero() {
            return Some(PPoly::zero(p));
        }
        let (dk, dc) = d.terms[0];
        let inv = invm(dc, p);
        let mut rem: BTreeMap<u128, u64> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((k, c)) = rem.pop_last() {
            if !monomial::divides(dk, k) {
                return None;
            }
            let q = mulm(c, inv, p);
            let qk = monomial::div(k, dk);
            for (tk, tc) in &d.terms[1..] {
                let key = monomial::mul(qk, *tk);
                let prod = mulm(q, *tc, p);
                let e = rem.entry(key).or_insert(0);
                *e = subm(*e, prod, p);
                if *e == 0 {
                    rem.remove(&key);
                }
            }
            quot.push((qk, q));
        }
        Some(PPoly { p, terms: quot })
    }
}
