//! Packed monomials.
//!
//! A monomial in at most [`MAX_VARS`] variables lives in one `u128`. The top
//! 16-bit field holds the total degree, the remaining fields hold the
//! exponents in variable order (variable 0 most significant). Plain integer
//! comparison of two keys is therefore graded-lexicographic comparison, and
//! multiplying monomials is adding keys.
//!
//! Every field keeps its top bit clear, which lets [`divides`] test all
//! exponents at once with a borrow-guard trick.

pub const MAX_VARS: usize = 7;
pub const MAX_EXP: u32 = (1 << 15) - 1;

const WIDTH: u32 = 16;
const FIELD: u128 = 0xFFFF;
const TOTAL_SHIFT: u32 = WIDTH * MAX_VARS as u32;
const GUARD: u128 = 0x8000_8000_8000_8000_8000_8000_8000_8000;

/// Mask removing the total-degree field; what is left compares lexicographically.
pub const LEX_MASK: u128 = !(FIELD << TOTAL_SHIFT);

#[inline]
pub fn shift(var: usize) -> u32 {
    debug_assert!(var < MAX_VARS);
    WIDTH * (MAX_VARS - 1 - var) as u32
}

pub fn pack(exps: &[u32]) -> u128 {
    assert!(exps.len() <= MAX_VARS, "too many variables for a packed monomial");
    let mut key = 0u128;
    let mut total = 0u32;
    for (i, &e) in exps.iter().enumerate() {
        assert!(e <= MAX_EXP, "exponent {e} exceeds {MAX_EXP}");
        key |= (e as u128) << shift(i);
        total += e;
    }
    assert!(total <= MAX_EXP, "total degree {total} exceeds {MAX_EXP}");
    key | ((total as u128) << TOTAL_SHIFT)
}

#[inline]
pub fn exponent(key: u128, var: usize) -> u32 {
    ((key >> shift(var)) & FIELD) as u32
}

#[inline]
pub fn total_degree(key: u128) -> u32 {
    (key >> TOTAL_SHIFT) as u32
}

pub fn unpack(key: u128, nvars: usize) -> Vec<u32> {
    (0..nvars).map(|i| exponent(key, i)).collect()
}

/// Single-variable monomial `x_var^e`.
pub fn var_power(var: usize, e: u32) -> u128 {
    assert!(e <= MAX_EXP);
    ((e as u128) << shift(var)) | ((e as u128) << TOTAL_SHIFT)
}

/// Product of two monomials.
#[inline]
pub fn mul(a: u128, b: u128) -> u128 {
    let c = a.wrapping_add(b);
    debug_assert_eq!(c & GUARD, 0, "monomial exponent overflow");
    c
}

/// Does `d` divide `m`?
#[inline]
pub fn divides(d: u128, m: u128) -> bool {
    ((m | GUARD).wrapping_sub(d)) & GUARD == GUARD
}

/// `m / d`; caller guarantees divisibility.
#[inline]
pub fn div(m: u128, d: u128) -> u128 {
    debug_assert!(divides(d, m));
    m - d
}

/// Remove variable `var` entirely, returning the remaining key and the exponent removed.
pub fn split_off(key: u128, var: usize) -> (u128, u32) {
    let e = exponent(key, var);
    let rest = key - (((e as u128) << shift(var)) | ((e as u128) << TOTAL_SHIFT));
    (rest, e)
}

/// Exponent-wise minimum.
pub fn gcd(a: u128, b: u128, nvars: usize) -> u128 {
    let exps: Vec<u32> = (0..nvars)
        .map(|i| exponent(a, i).min(exponent(b, i)))
        .collect();
    pack(&exps)
}

/// Move exponents to new positions: variable `i` of the source goes to `map[i]`.
pub fn remap(key: u128, map: &[usize]) -> u128 {
    let mut out = key & (FIELD << TOTAL_SHIFT);
    for (i, &j) in map.iter().enumerate() {
        out |= ((key >> shift(i)) & FIELD) << shift(j);
    }
    out
}

/// Packed key with the total-degree field dropped (pure lexicographic order).
#[inline]
pub fn lex(key: u128) -> u128 {
    key & LEX_MASK
}

/// Inverse of [`lex`].
#[cfg(test)]
pub fn from_lex(lex_key: u128, nvars: usize) -> u128 {
    let total: u32 = (0..nvars).map(|i| exponent(lex_key, i)).sum();
    assert!(total <= MAX_EXP);
    lex_key | ((total as u128) << TOTAL_SHIFT)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_graded_lex() {
        // z^2 > z*d > d^2 > z > d > 1 with z = var 0
        let keys = [
            pack(&[2, 0]),
            pack(&[1, 1]),
            pack(&[0, 2]),
            pack(&[1, 0]),
            pack(&[0, 1]),
            pack(&[0, 0]),
        ];
        for w in keys.windows(2) {
            assert!(w[0] > w[1]);
        }
        assert!(pack(&[0, 3]) > pack(&[2, 0]));
    }

    #[test]
    fn divisibility_and_product() {
        let a = pack(&[3, 1, 0]);
        let b = pack(&[1, 1, 0]);
        assert!(divides(b, a));
        assert!(!divides(a, b));
        assert!(!divides(pack(&[0, 0, 1]), a));
        assert_eq!(div(a, b), pack(&[2, 0, 0]));
        assert_eq!(mul(b, pack(&[2, 0, 0])), a);
        assert_eq!(split_off(a, 0), (pack(&[0, 1, 0]), 3));
    }

    #[test]
    fn remap_preserves_exponents() {
        let a = pack(&[3, 5]);
        let b = remap(a, &[1, 2]);
        assert_eq!(unpack(b, 3), vec![0, 3, 5]);
        assert_eq!(total_degree(b), 8);
        assert_eq!(from_lex(lex(b), 3), b);
    }
}
