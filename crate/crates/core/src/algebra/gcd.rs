//! Multivariate polynomial GCD over the integers.
//!
//! Brown's dense modular algorithm: images modulo word-sized primes are
//! computed by recursive evaluation/interpolation, combined by Chinese
//! remaindering, and accepted once the lifted candidate divides both inputs
//! exactly.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::{self, PPoly};
use super::monomial;
use super::zpoly::ZPoly;

/// Primitive gcd with positive leading coefficient, plus the cofactors `a/g`, `b/g`.
///
/// `gcd(0, b)` is the primitive part of `b`.
pub fn gcd_cofactors(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly, ZPoly) {
    let n = a.nvars;
    if a.is_zero() && b.is_zero() {
        return (ZPoly::zero(n), ZPoly::zero(n), ZPoly::zero(n));
    }
    if a.is_zero() {
        let (u, g) = b.primitive();
        return (g, ZPoly::zero(n), ZPoly::constant(n, u));
    }
    if b.is_zero() {
        let (u, g) = a.primitive();
        return (g, ZPoly::constant(n, u), ZPoly::zero(n));
    }
    if a.is_constant() || b.is_constant() {
        return (ZPoly::one(n), a.clone(), b.clone());
    }
    if a.len() == 1 || b.len() == 1 {
        let mut key = a.terms[0].0;
        for (k, _) in a.terms.iter().chain(&b.terms) {
            key = monomial::gcd(key, *k, n);
        }
        let g = ZPoly::monomial(n, key, BigInt::one());
        let ca = a.div_exact(&g).expect("monomial divides");
        let cb = b.div_exact(&g).expect("monomial divides");
        return (g, ca, cb);
    }
    if a == b {
        let (u, g) = a.primitive();
        return (g, ZPoly::constant(n, u.clone()), ZPoly::constant(n, u));
    }
    gcd_general(a, b)
}

pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    gcd_cofactors(a, b).0
}

fn gcd_general(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly, ZPoly) {
    let n = a.nvars;
    let da = a.max_degrees();
    let db = b.max_degrees();
    // Main variable: largest degree. The last (outermost evaluated) variable: smallest.
    let mut order: Vec<usize> = (0..n).collect();
    let weight = |i: usize| da[i].max(db[i]);
    order.sort_by(|&i, &j| weight(j).cmp(&weight(i)).then(i.cmp(&j)));
    let k = order.iter().filter(|&&i| weight(i) > 0).count();
    let mut map = vec![0usize; n];
    for (pos, &v) in order.iter().enumerate() {
        map[v] = pos;
    }
    let (ua, ap) = a.remap(n, &map).primitive();
    let (ub, bp) = b.remap(n, &map).primitive();
    // Early-terminating interpolation first; the degree-bounded variant only
    // if a candidate fails the exact division test.
    let (g, qa, qb) = match modular_gcd(&ap, &bp, k, false) {
        Some(r) => r,
        None => modular_gcd(&ap, &bp, k, true).expect("strict modular gcd terminates"),
    };
    let (u, g) = g.remap(n, &order).primitive();
    let ca = qa.remap(n, &order).scale(&(&ua * &u));
    let cb = qb.remap(n, &order).scale(&(&ub * &u));
    (g, ca, cb)
}

fn lex_lc(a: &ZPoly) -> &BigInt {
    let mut best = &a.terms[0];
    for t in &a.terms {
        if monomial::lex(t.0) > monomial::lex(best.0) {
            best = t;
        }
    }
    &best.1
}

fn symmetric(c: u64, p: u64) -> BigInt {
    if c > p / 2 {
        BigInt::from(c) - BigInt::from(p)
    } else {
        BigInt::from(c)
    }
}

fn lift(g: &PPoly, nvars: usize) -> ZPoly {
    ZPoly { nvars, terms: g.terms.iter().map(|(k, c)| (*k, symmetric(*c, g.p))).collect() }
}

/// Combine `g ≡ G (mod m)` with `gp (mod p)` into a symmetric residue mod `m·p`.
fn crt(g: &ZPoly, m: &BigInt, gp: &PPoly) -> ZPoly {
    let p = gp.p;
    let mp = m * BigInt::from(p);
    let half = &mp >> 1;
    let minv = modp::invm(modp::bigint_mod(m, p), p);
    let combine = |c: &BigInt, r: u64| -> BigInt {
        let cm = modp::bigint_mod(c, p);
        if cm == r {
            return c.clone();
        }
        let t = modp::mulm(modp::subm(r, cm, p), minv, p);
        let mut v = c + m * BigInt::from(t);
        if v > half {
            v -= &mp;
        } else if v < -&half {
            v += &mp;
        }
        v
    };
    let mut out = Vec::with_capacity(g.len().max(gp.terms.len()));
    let (mut i, mut j) = (0, 0);
    let zero = BigInt::zero();
    while i < g.terms.len() || j < gp.terms.len() {
        let gk = g.terms.get(i).map(|t| t.0);
        let pk = gp.terms.get(j).map(|t| t.0);
        let (key, c, r) = match (gk, pk) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
                (x, &g.terms[i - 1].1, gp.terms[j - 1].1)
            }
            (Some(x), Some(y)) if x > y => {
                i += 1;
                (x, &g.terms[i - 1].1, 0)
            }
            (Some(x), None) => {
                i += 1;
                (x, &g.terms[i - 1].1, 0)
            }
            (_, Some(y)) => {
                j += 1;
                (y, &zero, gp.terms[j - 1].1)
            }
            (None, None) => unreachable!(),
        };
        let v = combine(c, r);
        if !v.is_zero() {
            out.push((key, v));
        }
    }
    ZPoly { nvars: g.nvars, terms: out }
}

/// Gcd of two primitive polynomials in variables `0..k` (all other exponents
/// zero), with the exact cofactors. In non-strict mode gives up (`None`) the
/// first time a lifted candidate fails to divide.
fn modular_gcd(a: &ZPoly, b: &ZPoly, k: usize, strict: bool) -> Option<(ZPoly, ZPoly, ZPoly)> {
    let n = a.nvars;
    let la = lex_lc(a).clone();
    let lb = lex_lc(b).clone();
    let gamma = la.gcd(&lb);
    // Far more modulus than any true gcd coefficient needs: start over.
    let limit_bits = 2 * (a.max_coeff_bits() + b.max_coeff_bits())
        + 2 * a.max_degrees().iter().chain(&b.max_degrees()).map(|d| *d as u64).sum::<u64>()
        + 128;
    let mut acc: Option<(ZPoly, BigInt, u128)> = None;
    for i in 0.. {
        let p = modp::prime(i);
        if modp::bigint_mod(&la, p) == 0 || modp::bigint_mod(&lb, p) == 0 {
            continue;
        }
        let gp = pgcd(&PPoly::from_zpoly(a, p), &PPoly::from_zpoly(b, p), k, strict);
        if gp.is_constant() {
            return Some((ZPoly::one(n), a.clone(), b.clone()));
        }
        let gp = gp.scale(modp::bigint_mod(&gamma, p));
        let lm = monomial::lex(gp.lex_lead().0);
        match acc.take() {
            Some((g, m, lm0)) if lm == lm0 => {
                let next = crt(&g, &m, &gp);
                let stable = next == g;
                let m = m * BigInt::from(p);
                if stable {
                    let (_, cand) = next.primitive();
                    if let Some(qb) = b.div_exact(&cand) {
                        if let Some(qa) = a.div_exact(&cand) {
                            return Some((cand, qa, qb));
                        }
                    }
                    if !strict {
                        return None;
                    }
                    acc = None;
                    continue;
                }
                if m.bits() > limit_bits {
                    if !strict {
                        return None;
                    }
                    continue;
                }
                acc = Some((next, m, lm0));
            }
            Some((g, m, lm0)) if lm > lm0 => acc = Some((g, m, lm0)),
            _ => acc = Some((lift(&gp, n), BigInt::from(p), lm)),
        }
    }
    unreachable!()
}

fn content_of(groups: &HashMap<u128, Vec<u64>>, p: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = Vec::new();
    for v in groups.values() {
        acc = modp::ugcd(&acc, v, p);
        if acc.len() == 1 {
            break;
        }
    }
    acc
}

fn divide_groups(groups: &mut HashMap<u128, Vec<u64>>, c: &[u64], p: u64) {
    if c.len() <= 1 {
        return;
    }
    for v in groups.values_mut() {
        let (q, r) = modp::udivrem(v, c, p);
        debug_assert!(r.is_empty());
        *v = q;
    }
}

fn lead_group(groups: &HashMap<u128, Vec<u64>>) -> Vec<u64> {
    let key = groups.keys().max_by_key(|k| monomial::lex(**k)).unwrap();
    let mut v = groups[key].clone();
    modp::trim(&mut v);
    v
}

/// Evaluation points modulo `p`: a fixed spread-out sequence rather than
/// 1, 2, 3, … (small integers are often special points of the inputs,
/// e.g. `t = 1` or `z = 1`, where the gcd image has the wrong degree).
fn eval_points(p: u64) -> impl Iterator<Item = u64> {
    let start = p / 3;
    (0..p).map(move |j| (start + j * 40503) % p).filter(|a| *a != 0)
}

/// Lex-monic gcd modulo `p` of polynomials in variables `0..k`.
fn pgcd(a: &PPoly, b: &PPoly, k: usize, strict: bool) -> PPoly {
    let p = a.p;
    if a.is_zero() {
        return b.make_lex_monic();
    }
    if b.is_zero() {
        return a.make_lex_monic();
    }
    if k <= 1 {
        let dense = |x: &PPoly| {
            let mut v = vec![0u64; x.degree_in(0) as usize + 1];
            for (key, c) in &x.terms {
                v[monomial::exponent(*key, 0) as usize] = *c;
            }
            v
        };
        let g = modp::ugcd(&dense(a), &dense(b), p);
        let terms = g
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(e, c)| (monomial::var_power(0, e as u32), *c))
            .collect();
        return PPoly::from_terms(p, terms);
    }
    if k == 2 {
        return pgcd_dense2(a, b, strict);
    }
    let last = k - 1;
    let mut ga = a.groups(last);
    let mut gb = b.groups(last);
    let ca = content_of(&ga, p);
    let cb = content_of(&gb, p);
    let c = modp::ugcd(&ca, &cb, p);
    divide_groups(&mut ga, &ca, p);
    divide_groups(&mut gb, &cb, p);
    let a1 = PPoly::from_groups(p, last, &ga);
    let b1 = PPoly::from_groups(p, last, &gb);
    let la = lead_group(&ga);
    let lb = lead_group(&gb);
    let lg = modp::ugcd(&la, &lb, p);

    let mut state: Option<(PPoly, Vec<u64>, u128)> = None;
    for alpha in eval_points(p) {
        if modp::ueval(&la, alpha, p) == 0 || modp::ueval(&lb, alpha, p) == 0 {
            continue;
        }
        let gi = pgcd(&a1.eval_var(last, alpha), &b1.eval_var(last, alpha), last, strict);
        if gi.is_constant() {
            return PPoly::from_groups(p, last, &HashMap::from([(0u128, c)])).make_lex_monic();
        }
        let gi = gi.scale(modp::ueval(&lg, alpha, p));
        let lm = monomial::lex(gi.lex_lead().0);
        match state.take() {
            Some((h, q, lm0)) if lm == lm0 => {
                let diff = gi.sub(&h.eval_var(last, alpha));
                let mut h = h;
                if diff.is_zero() {
                    let mut groups = h.groups(last);
                    let cont = content_of(&groups, p);
                    divide_groups(&mut groups, &cont, p);
                    let cand = PPoly::from_groups(p, last, &groups);
                    if a1.div_exact(&cand).is_some() && b1.div_exact(&cand).is_some() {
                        return cand.mul_univariate(last, &c).make_lex_monic();
                    }
                } else {
                    let scale = modp::invm(modp::ueval(&q, alpha, p), p);
                    let qs: Vec<u64> = q.iter().map(|x| modp::mulm(*x, scale, p)).collect();
                    h = h.add(&diff.mul_univariate(last, &qs));
                }
                let q = modp::umul(&q, &[p - alpha, 1], p);
                state = Some((h, q, lm0));
            }
            Some((h, q, lm0)) if lm > lm0 => state = Some((h, q, lm0)),
            _ => state = Some((gi, vec![p - alpha, 1], lm)),
        }
    }
    unreachable!("ran out of evaluation points")
}


/// Exact division for polynomials in at most two variables: evaluate the
/// second variable, divide univariately mod `p`, interpolate, and combine
/// primes until the lifted quotient multiplies back to `a`.
///
/// `Some(None)` means `b` provably does not divide `a` (a nonzero remainder
/// modulo a prime). `None` means undecided; the caller falls back to sparse
/// division.
pub(crate) fn div_exact_modular(a: &ZPoly, b: &ZPoly) -> Option<Option<ZPoly>> {
    let n = a.nvars;
    let (oa, ob) = (a.occurring(), b.occurring());
    let occ: Vec<usize> = (0..n).filter(|&i| oa[i] || ob[i]).collect();
    if occ.is_empty() || occ.len() > 2 {
        return None;
    }
    let (da, db) = (a.max_degrees(), b.max_degrees());
    if (0..n).any(|i| db[i] > da[i]) {
        return Some(None);
    }
    let (x, y) = match occ[..] {
        [v] => (v, None),
        [v, w] if da[v] >= da[w] => (v, Some(w)),
        [v, w] => (w, Some(v)),
        _ => unreachable!(),
    };
    let dqx = (da[x] - db[x]) as usize;
    let dqy = y.map_or(0, |y| (da[y] - db[y]) as usize);
    let lb = lex_lc(b).clone();
    let cap = (a.max_coeff_bits() + da.iter().map(|d| *d as u64).sum::<u64>() + 64) / 30 + 2;
    let mut acc: Option<(ZPoly, BigInt)> = None;
    let mut used = 0u64;
    for i in 0.. {
        let p = modp::prime(i);
        if modp::bigint_mod(&lb, p) == 0 {
            continue;
        }
        let qp = match div_mod_p(a, b, x, y, dqx, dqy, p) {
            Err(()) => return Some(None),
            Ok(q) => q,
        };
        used += 1;
        let next = match acc.take() {
            None => (lift(&qp, n), BigInt::from(p)),
            Some((g, m)) => {
                let next = crt(&g, &m, &qp);
                if next == g && next.mul(b) == *a {
                    return Some(Some(next));
                }
                (next, m * BigInt::from(p))
            }
        };
        if used > cap {
            return None;
        }
        acc = Some(next);
    }
    unreachable!()
}

fn rows_mod_p(a: &ZPoly, x: usize, y: Option<usize>, p: u64) -> Vec<Vec<u64>> {
    let mut rows = vec![Vec::new(); a.degree_in(x) as usize + 1];
    for (key, c) in &a.terms {
        let i = monomial::exponent(*key, x) as usize;
        let j = y.map_or(0, |y| monomial::exponent(*key, y) as usize);
        let row: &mut Vec<u64> = &mut rows[i];
        if row.len() <= j {
            row.resize(j + 1, 0);
        }
        row[j] = modp::bigint_mod(c, p);
    }
    rows
}

/// Quotient `a / b` modulo `p`, or `Err` when some specialization leaves a remainder.
fn div_mod_p(a: &ZPoly, b: &ZPoly, x: usize, y: Option<usize>, dqx: usize, dqy: usize, p: u64) -> Result<PPoly, ()> {
    let ra = rows_mod_p(a, x, y, p);
    let rb = rows_mod_p(b, x, y, p);
    let mut lead = rb.last().unwrap().clone();
    modp::trim(&mut lead);
    let mut alphas = Vec::with_capacity(dqy + 1);
    let mut images: Vec<Vec<u64>> = Vec::with_capacity(dqy + 1);
    let mut ea = vec![0u64; ra.len()];
    let mut eb = vec![0u64; rb.len()];
    for alpha in 0..p {
        if alphas.len() > dqy {
            break;
        }
        if modp::ueval(&lead, alpha, p) == 0 {
            continue;
        }
        for (e, r) in ea.iter_mut().zip(&ra) {
            *e = modp::ueval(r, alpha, p);
        }
        for (e, r) in eb.iter_mut().zip(&rb) {
            *e = modp::ueval(r, alpha, p);
        }
        let (mut q, r) = modp::udivrem(&ea, &eb, p);
        if !r.is_empty() || q.len() > dqx + 1 {
            return Err(());
        }
        q.resize(dqx + 1, 0);
        alphas.push(alpha);
        images.push(q);
    }
    // Newton interpolation, one coefficient of x at a time.
    let m = alphas.len();
    let mut inv = vec![0u64; m * m];
    for i in 0..m {
        for j in 0..i {
            inv[i * m + j] = modp::invm(modp::subm(alphas[i], alphas[j], p), p);
        }
    }
    let mut terms = Vec::new();
    let mut c = vec![0u64; m];
    for e in 0..=dqx {
        for (ci, img) in c.iter_mut().zip(&images) {
            *ci = img[e];
        }
        for j in 1..m {
            for i in (j..m).rev() {
                c[i] = modp::mulm(modp::subm(c[i], c[i - 1], p), inv[i * m + (i - j)], p);
            }
        }
        let mut poly = vec![0u64; m];
        poly[0] = c[m - 1];
        for k in (0..m - 1).rev() {
            // poly ← poly·(y − α_k) + c_k
            for i in (0..m - 1).rev() {
                let t = modp::mulm(poly[i], alphas[k], p);
                poly[i + 1] = modp::addm(poly[i + 1], poly[i], p);
                poly[i] = modp::subm(0, t, p);
            }
            poly[0] = modp::addm(poly[0], c[k], p);
        }
        for (j, v) in poly.iter().enumerate() {
            if *v != 0 {
                let key = monomial::mul(
                    monomial::var_power(x, e as u32),
                    y.map_or(0, |y| monomial::var_power(y, j as u32)),
                );
                terms.push((key, *v));
            }
        }
    }
    Ok(PPoly::from_terms(p, terms))
}

/// Dense rows: `rows[i]` is the coefficient of `x₀^i` as a polynomial in `x₁`.
fn to_rows(a: &PPoly) -> Vec<Vec<u64>> {
    let mut rows = vec![Vec::new(); a.degree_in(0) as usize + 1];
    for (key, c) in &a.terms {
        let (i, j) = (monomial::exponent(*key, 0) as usize, monomial::exponent(*key, 1) as usize);
        let row: &mut Vec<u64> = &mut rows[i];
        if row.len() <= j {
            row.resize(j + 1, 0);
        }
        row[j] = *c;
    }
    rows
}

fn from_rows(p: u64, rows: &[Vec<u64>]) -> PPoly {
    let mut terms = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if *c != 0 {
                terms.push((monomial::pack(&[i as u32, j as u32]), *c));
            }
        }
    }
    PPoly::from_terms(p, terms)
}

fn rows_content(rows: &[Vec<u64>], p: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = Vec::new();
    for r in rows {
        acc = modp::ugcd(&acc, r, p);
        if acc.len() == 1 {
            break;
        }
    }
    acc
}

fn rows_divide(rows: &mut [Vec<u64>], c: &[u64], p: u64) {
    if c.len() <= 1 {
        return;
    }
    for r in rows.iter_mut() {
        *r = modp::udivrem(r, c, p).0;
    }
}

/// Bivariate gcd mod `p` by evaluating `x₁` and interpolating (Newton form).
/// Stops once an extra point leaves the interpolant unchanged, or in strict
/// mode once the number of points exceeds the degree bound.
fn pgcd_dense2(a: &PPoly, b: &PPoly, strict: bool) -> PPoly {
    let p = a.p;
    let mut ra = to_rows(a);
    let mut rb = to_rows(b);
    let ca = rows_content(&ra, p);
    let cb = rows_content(&rb, p);
    let c = modp::ugcd(&ca, &cb, p);
    rows_divide(&mut ra, &ca, p);
    rows_divide(&mut rb, &cb, p);
    let mut la = ra.last().unwrap().clone();
    let mut lb = rb.last().unwrap().clone();
    modp::trim(&mut la);
    modp::trim(&mut lb);
    let lg = modp::ugcd(&la, &lb, p);
    let ydeg = |rows: &[Vec<u64>]| rows.iter().map(|r| r.len()).max().unwrap_or(1).saturating_sub(1);
    let bound = ydeg(&ra).min(ydeg(&rb)) + lg.len() - 1;
    let finish = |h: Vec<Vec<u64>>| {
        let mut h = h;
        let cont = rows_content(&h, p);
        rows_divide(&mut h, &cont, p);
        for r in h.iter_mut() {
            *r = modp::umul(r, &c, p);
        }
        from_rows(p, &h).make_lex_monic()
    };

    // (interpolant rows, Newton basis product, x-degree, points used)
    let mut state: Option<(Vec<Vec<u64>>, Vec<u64>, usize, usize)> = None;
    let mut ea = vec![0u64; ra.len()];
    let mut eb = vec![0u64; rb.len()];
    for alpha in eval_points(p) {
        let lav = modp::ueval(&la, alpha, p);
        let lbv = modp::ueval(&lb, alpha, p);
        if lav == 0 || lbv == 0 {
            continue;
        }
        for (e, r) in ea.iter_mut().zip(&ra) {
            *e = modp::ueval(r, alpha, p);
        }
        for (e, r) in eb.iter_mut().zip(&rb) {
            *e = modp::ueval(r, alpha, p);
        }
        let g = modp::ugcd(&ea, &eb, p);
        if g.len() == 1 {
            return finish(vec![vec![1]]);
        }
        let s = modp::ueval(&lg, alpha, p);
        let g: Vec<u64> = g.iter().map(|x| modp::mulm(*x, s, p)).collect();
        let dg = g.len() - 1;
        match state.take() {
            Some((mut h, q, d0, pts)) if dg == d0 => {
                let mut unchanged = true;
                let qinv = modp::invm(modp::ueval(&q, alpha, p), p);
                for (hi, gi) in h.iter_mut().zip(&g) {
                    let diff = modp::subm(*gi, modp::ueval(hi, alpha, p), p);
                    if diff != 0 {
                        unchanged = false;
                        let t = modp::mulm(diff, qinv, p);
                        if hi.len() < q.len() {
                            hi.resize(q.len(), 0);
                        }
                        for (x, y) in hi.iter_mut().zip(&q) {
                            *x = modp::addm(*x, modp::mulm(*y, t, p), p);
                        }
                    }
                }
                let pts = pts + 1;
                if (!strict && unchanged) || pts > bound {
                    return finish(h);
                }
                let q = modp::umul(&q, &[p - alpha, 1], p);
                state = Some((h, q, d0, pts));
            }
            Some(st) if dg > st.2 => state = Some(st),
            _ => {
                let h: Vec<Vec<u64>> = g.iter().map(|x| vec![*x]).collect();
                if bound == 0 {
                    return finish(h);
                }
                state = Some((h, vec![p - alpha, 1], dg, 1));
            }
        }
    }
    unreachable!("ran out of evaluation points")
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
    fn univariate_common_factor() {
        let a = p(1, &[(&[2], 1), (&[0], -1)]);
        let b = p(1, &[(&[1], 1), (&[0], -1)]);
        assert_eq!(gcd(&a, &b), b);
        let c = p(1, &[(&[2], 1), (&[1], -1)]);
        assert_eq!(gcd(&b.mul(&b), &c), b);
    }

    #[test]
    fn bivariate_hidden_factor() {
        // g = z^2 + d z + 1, a = g (z - 3 d)^2 (d + 7), b = g (z + d^3 - 2)
        let g = p(2, &[(&[2, 0], 1), (&[1, 1], 1), (&[0, 0], 1)]);
        let u = p(2, &[(&[1, 0], 1), (&[0, 1], -3)]);
        let v = p(2, &[(&[0, 1], 1), (&[0, 0], 7)]);
        let w = p(2, &[(&[1, 0], 1), (&[0, 3], 1), (&[0, 0], -2)]);
        let a = g.mul(&u).mul(&u).mul(&v).scale(&BigInt::from(6));
        let b = g.mul(&w).scale(&BigInt::from(-4));
        let (h, ca, cb) = gcd_cofactors(&a, &b);
        assert_eq!(h, g);
        assert_eq!(ca.mul(&h), a);
        assert_eq!(cb.mul(&h), b);
    }

    #[test]
    fn coprime_and_content_only() {
        let a = p(2, &[(&[1, 1], 2), (&[0, 0], 4)]);
        let b = p(2, &[(&[1, 0], 6), (&[0, 1], 3)]);
        assert!(gcd(&a, &b).is_one());
        // common factor purely in the second variable
        let d = p(2, &[(&[0, 1], 1), (&[0, 0], -5)]);
        let x = p(2, &[(&[1, 0], 1), (&[0, 0], 1)]);
        let y = p(2, &[(&[2, 0], 1), (&[0, 1], 1)]);
        assert_eq!(gcd(&d.mul(&x), &d.mul(&y)), d);
    }

    #[test]
    fn unlucky_evaluation_point() {
        // a(x, 1) = 2(x - 1)^2, yet gcd(a, (x - 1)^2) = 1
        let a = p(2, &[(&[2, 2], 1), (&[2, 1], 1), (&[1, 2], 1), (&[1, 1], -6), (&[1, 0], 1), (&[0, 1], 1), (&[0, 0], 1)]);
        let b = p(2, &[(&[2, 0], 1), (&[1, 0], -2), (&[0, 0], 1)]);
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn three_variables() {
        let g = p(3, &[(&[1, 1, 0], 1), (&[0, 0, 2], -3), (&[0, 0, 0], 1)]);
        let a = g.mul(&p(3, &[(&[2, 0, 1], 1), (&[0, 1, 0], 1)]));
        let b = g.mul(&p(3, &[(&[0, 2, 0], 5), (&[1, 0, 0], -1), (&[0, 0, 1], 2)]));
        assert_eq!(gcd(&a, &b), g);
    }
}
