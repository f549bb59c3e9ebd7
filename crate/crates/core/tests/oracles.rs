//! Independent oracles for the curve computations: the textbook group law on
//! y² = x³ + δx² + x over ℚ at rational specializations, and direct pole counts.

use manin_denef::algebra::{int, rat, RatFunc, Rational, VarId};
use manin_denef::curve::EndoTable;
use num_traits::{One, Zero};

type Pt = Option<(Rational, Rational)>;

// At a rational z0 with s² = f(z0) not a square we keep the twist T = f(z0)
// and write points as (a, b) meaning (a, s·b).
fn add(p: &Pt, q: &Pt, delta: &Rational, t: &Rational) -> Pt {
    let (Some((a1, b1)), Some((a2, b2))) = (p, q) else {
        return p.clone().or(q.clone());
    };
    let m = if a1 == a2 {
        if b1 != b2 || b1.is_zero() {
            return None;
        }
        (int(3) * a1 * a1 + int(2) * delta * a1 + Rational::one()) / (int(2) * t * b1)
    } else {
        (b2 - b1) / (a2 - a1)
    };
    let a3 = t * &m * &m - delta - a1 - a2;
    let b3 = -b1 - &m * (&a3 - a1);
    Some((a3, b3))
}

fn multiple(n: i64, z0: &Rational, delta: &Rational) -> Pt {
    let t = z0 * z0 * z0 + delta * z0 * z0 + z0;
    let step = Some((z0.clone(), if n < 0 { -Rational::one() } else { Rational::one() }));
    (0..n.abs()).fold(None, |acc, _| add(&acc, &step, delta, &t))
}

fn at(f: &RatFunc, z0: &Rational, d0: &Rational) -> Option<Rational> {
    f.evaluate(&[(VarId::z(), z0.clone()), (VarId::delta(), d0.clone())])
}

#[test]
fn multiples_agree_with_the_textbook_law_at_rational_points() {
    let table = EndoTable::generic();
    let points = [(int(3), int(5)), (rat(-2, 3), rat(7, 2)), (int(5), int(1)), (rat(1, 7), int(-3))];
    let mut checked = 0;
    for n in (-9..=9).filter(|n| *n != 0) {
        let p = table.get(n).unwrap();
        for (z0, d0) in &points {
            let Some((a, b)) = multiple(n, z0, d0) else { continue };
            assert_eq!(at(&p.x, z0, d0), Some(a), "x_{n} at ({z0}, {d0})");
            assert_eq!(at(&p.y, z0, d0), Some(b), "y_{n} at ({z0}, {d0})");
            checked += 1;
        }
    }
    assert_eq!(checked, 18 * points.len());
}

/// Largest k with (z − 1)^k dividing x − 1, read off by repeated exact
/// division at a generic δ, and the negative count for poles.
fn order_at_one(f: &RatFunc) -> i64 {
    let d0 = int(3);
    let g = f.evaluate_partial(&VarId::delta(), &d0).unwrap();
    let zm1: RatFunc = "z - 1".parse().unwrap();
    let mut k = 0;
    let mut h = g.clone();
    while h.evaluate_partial(&VarId::z(), &int(1)).is_none() {
        h = &h * &zm1;
        k -= 1;
    }
    while h.evaluate_partial(&VarId::z(), &int(1)).is_some_and(|v| v.is_zero()) {
        h = h.checked_div(&zm1).unwrap();
        k += 1;
    }
    k
}

#[test]
fn orders_at_z_equal_one_by_direct_division() {
    let table = EndoTable::generic();
    for n in 1..=12 {
        let x = &table.get(n).unwrap().x;
        let want = match n % 4 {
            0 => -2,
            2 => 0,
            _ => 1,
        };
        assert_eq!(order_at_one(&(x - &RatFunc::one())), want, "n = {n}");
    }
}

#[test]
fn second_multiple_closed_form() {
    let p = EndoTable::generic().get(2).unwrap();
    let want: RatFunc = "(z^2 - 1)^2 / (4*(z^3 + delta*z^2 + z))".parse().unwrap();
    assert_eq!(p.x, want);
}
