//! Integer polynomials over named variables: the terms of the formula language.
//!
//! Terms are kept fully expanded, so two terms are equal exactly when their
//! term maps are equal. There is no bound on the number of variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Sorted `(name, exponent)` pairs, exponents positive.
pub type Monomial = Vec<(String, u32)>;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Term {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Term {
    pub fn zero() -> Self {
        Term::default()
    }

    pub fn one() -> Self {
        Term::int(1)
    }

    pub fn int(n: i64) -> Self {
        Term::constant(BigInt::from(n))
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Term { terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(name.to_string(), 1)], BigInt::one());
        Term { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    /// The bare variable this term is, if it is one.
    pub fn as_var(&self) -> Option<&str> {
        let (m, c) = self.terms.iter().next()?;
        (self.terms.len() == 1 && c.is_one() && m.len() == 1 && m[0].1 == 1).then(|| m[0].0.as_str())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v.clone())).collect()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        self.terms.keys().map(|m| exponent(m, name)).max().unwrap_or(0)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Term::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Term::zero();
        }
        Term { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    /// Replaces `name` by `by` everywhere.
    pub fn substitute(&self, name: &str, by: &Term) -> Self {
        let mut out = Term::zero();
        for (m, c) in &self.terms {
            let e = exponent(m, name);
            let rest: Monomial = m.iter().filter(|(v, _)| v != name).cloned().collect();
            out = &out + &(&Term::monomial(rest, c.clone()) * &by.pow(e));
        }
        out
    }

    /// Rewrites every monomial through `f`, summing coefficients of collisions.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Self {
        let mut out = Term::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }

    fn monomial(m: Monomial, c: BigInt) -> Self {
        let mut t = Term::zero();
        t.add_term(m, c);
        t
    }

    fn add_term(&mut self, mut m: Monomial, c: BigInt) {
        m.retain(|(_, e)| *e > 0);
        m.sort();
        let slot = self.terms.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }
}

pub fn exponent(m: &Monomial, name: &str) -> u32 {
    m.iter().find(|(v, _)| v == name).map_or(0, |(_, e)| *e)
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<&str, u32> = BTreeMap::new();
    for (v, e) in a.iter().chain(b) {
        *out.entry(v).or_default() += e;
    }
    out.into_iter().map(|(v, e)| (v.to_string(), e)).collect()
}

impl Add for &Term {
    type Output = Term;
    fn add(self, rhs: &Term) -> Term {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Term {
    type Output = Term;
    fn sub(self, rhs: &Term) -> Term {
        self + &(-rhs)
    }
}

impl Neg for &Term {
    type Output = Term;
    fn neg(self) -> Term {
        Term { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Term {
    type Output = Term;
    fn mul(self, rhs: &Term) -> Term {
        let mut out = Term::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl From<i64> for Term {
    fn from(n: i64) -> Self {
        Term::int(n)
    }
}

// Display order: higher total degree first, then by variable names.
fn display_order(terms: &BTreeMap<Monomial, BigInt>) -> Vec<(&Monomial, &BigInt)> {
    let mut v: Vec<_> = terms.iter().collect();
    v.sort_by(|(a, _), (b, _)| {
        let da: u32 = a.iter().map(|(_, e)| e).sum();
        let db: u32 = b.iter().map(|(_, e)| e).sum();
        db.cmp(&da).then_with(|| a.cmp(b))
    });
    v
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in display_order(&self.terms).into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut first = true;
            if !a.is_one() || m.is_empty() {
                write!(f, "{a}")?;
                first = false;
            }
            for (v, e) in m {
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(v)?;
                if *e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Term {
    type Err = Error;
    fn from_str(s: &str) -> Result<Term> {
        let mut r = Lexer::new(s, true);
        let t = r.expr()?;
        r.expect_end()?;
        Ok(t)
    }
}

/// Expression reader shared by term parsing and the Diophantine input reader.
///
/// Grammar: integers, identifiers, `+ - * ^ ( )`, unary minus, and an
/// integer literal directly followed by a factor (`3x` reads as `3*x`).
/// Exponents are non-negative integer literals.
pub(crate) struct Lexer<'a> {
    src: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    underscores: bool,
    /// Identifiers met so far, with the position of their first letter.
    pub seen: Vec<(String, usize)>,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str, underscores: bool) -> Self {
        Lexer { src, chars: src.char_indices().collect(), pos: 0, underscores, seen: Vec::new() }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn restore(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |(o, _)| *o)
    }

    pub fn line_col(&self, offset: usize) -> (usize, usize) {
        let before = &self.src[..offset];
        let line = 1 + before.matches('\n').count();
        let column = 1 + before.rsplit('\n').next().map_or(0, |s| s.chars().count());
        (line, column)
    }

    pub fn err_at(&self, offset: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.line_col(offset);
        Error::Syntax { line, column, message: message.into() }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        self.err_at(self.offset(), message)
    }

    /// Skips spaces and tabs, not newlines (they separate equations).
    fn skip_blank(&mut self) {
        while let Some((_, c)) = self.chars.get(self.pos) {
            if *c == ' ' || *c == '\t' || *c == '\r' {
                self.pos += 1;
            } else if *c == '#' {
                while self.chars.get(self.pos).is_some_and(|(_, c)| *c != '\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    pub fn peek(&mut self) -> Option<char> {
        self.skip_blank();
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    pub fn bump(&mut self) {
        self.pos += 1;
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub fn expect_end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
        }
    }

    pub fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            return None;
        }
        while self
            .chars
            .get(self.pos)
            .is_some_and(|(_, c)| c.is_ascii_alphanumeric() || (self.underscores && *c == '_'))
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
        self.seen.push((name.clone(), self.chars[start].0));
        Some(name)
    }

    fn integer(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
        digits.parse().ok()
    }

    pub fn expr(&mut self) -> Result<Term> {
        let mut acc = if self.eat('-') { -&self.product()? } else { self.product()? };
        loop {
            if self.eat('+') {
                acc = &acc + &self.product()?;
            } else if self.eat('-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Term> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '(') && acc.as_constant().is_some() {
                // coefficient juxtaposition, e.g. `3x^2`
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Term> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_blank();
            let at = self.offset();
            let e = self.integer().ok_or_else(|| self.err("expected a non-negative integer exponent"))?;
            let e: u32 = e.try_into().map_err(|_| self.err_at(at, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let t = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(t)
            }
            Some(c) if c.is_ascii_digit() => Ok(Term::constant(self.integer().unwrap())),
            Some(c) if c.is_ascii_alphabetic() => Ok(Term::var(&self.ident().unwrap())),
            Some('\n') => Err(self.err("unexpected end of line")),
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let a = t("(x + 1)^2 - 2x");
        assert_eq!(a.to_string(), "x^2 + 1");
        assert_eq!(t("a_b_0*z1 - 3").to_string(), "a_b_0*z1 - 3");
        assert_eq!(t("-(x-y)*(x+y)").to_string(), "-x^2 + y^2");
        assert!(t("x - x").is_zero());
        assert_eq!(t("x*y*x").degree_in("x"), 2);
        assert_eq!(t("x").as_var(), Some("x"));
        assert_eq!(t("2x").as_var(), None);
    }

    #[test]
    fn substitution() {
        assert_eq!(t("x^2 + x*y").substitute("x", &t("y + 1")), t("2*y^2 + 3*y + 1"));
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-1", "x^3*y - 4*z1^2 + 7", "-a*b*c + a"] {
            let x = t(s);
            assert_eq!(t(&x.to_string()), x);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = "x + \n  * y".parse::<Term>().unwrap_err();
        assert!(matches!(e, Error::Syntax { .. }));
        let e = "x^-1".parse::<Term>().unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, column: 3, .. }), "{e:?}");
    }
}
