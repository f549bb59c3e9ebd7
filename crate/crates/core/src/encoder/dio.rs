//! Reader for integer Diophantine systems.
//!
//! Equations are separated by `;` or newlines, `#` starts a comment. A line
//! `vars x, y, w` declares the unknowns; once any declaration is present,
//! every identifier must be declared. Without one, the unknowns are the
//! identifiers in order of first appearance.

use std::collections::BTreeSet;

use super::term::{Lexer, Term};
use crate::error::{Error, Result};

/// Names that denote the independent variables in emitted formulas.
pub const RESERVED: [&str; 2] = ["z1", "z2"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DioSystem {
    pub unknowns: Vec<String>,
    /// Each equation as `lhs − rhs`, to be read as `= 0`.
    pub equations: Vec<Term>,
}

pub fn parse_diophantine(text: &str) -> Result<DioSystem> {
    let mut lx = Lexer::new(text, false);
    let mut declared: Vec<String> = Vec::new();
    let mut equations = Vec::new();
    let mut any_directive = false;
    loop {
        while lx.eat(';') || lx.eat('\n') {}
        if lx.at_end() {
            break;
        }
        if let Some(list) = directive(&mut lx)? {
            any_directive = true;
            for (name, at) in list {
                if RESERVED.contains(&name.as_str()) {
                    return Err(lx.err_at(at, format!("`{name}` is reserved")));
                }
                if declared.contains(&name) {
                    return Err(lx.err_at(at, format!("`{name}` declared twice")));
                }
                declared.push(name);
            }
        } else {
            let lhs = lx.expr()?;
            let at = lx.offset();
            if !lx.eat('=') {
                return Err(lx.err_at(at, "expected `=`"));
            }
            let rhs = lx.expr()?;
            equations.push(&lhs - &rhs);
        }
        match lx.peek() {
            None | Some(';') | Some('\n') => {}
            Some(c) => {
                let at = lx.offset();
                return Err(lx.err_at(at, format!("unexpected `{c}`")));
            }
        }
    }
    let uses = lx.seen.clone();
    for (name, at) in &uses {
        if RESERVED.contains(&name.as_str()) {
            return Err(lx.err_at(*at, format!("`{name}` is reserved")));
        }
    }
    let unknowns = if !any_directive {
        let mut seen = BTreeSet::new();
        uses.iter().filter(|(n, _)| seen.insert(n.clone())).map(|(n, _)| n.clone()).collect()
    } else {
        for (name, at) in &uses {
            if !declared.contains(name) {
                let (line, column) = lx.line_col(*at);
                return Err(Error::UnknownIdentifier { name: name.clone(), line, column });
            }
        }
        declared
    };
    Ok(DioSystem { unknowns, equations })
}

/// `vars a, b, c`; leaves the reader untouched when the statement is an equation.
fn directive(lx: &mut Lexer) -> Result<Option<Vec<(String, usize)>>> {
    let save = (lx.position(), lx.seen.len());
    match lx.ident() {
        Some(w) if w == "vars" && lx.peek().is_none_or(|c| c.is_ascii_alphabetic() || c == '\n' || c == ';') => {
            lx.seen.pop();
        }
        _ => {
            lx.restore(save.0);
            lx.seen.truncate(save.1);
            return Ok(None);
        }
    }
    let mut out = Vec::new();
    loop {
        let at = {
            lx.peek();
            lx.offset()
        };
        let Some(name) = lx.ident() else {
            if out.is_empty() && matches!(lx.peek(), None | Some('\n') | Some(';')) {
                break;
            }
            return Err(lx.err_at(at, "expected an identifier"));
        };
        lx.seen.pop();
        out.push((name, at));
        if !lx.eat(',') {
            break;
        }
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = parse_diophantine("x^2 + y^2 = 25").unwrap();
        assert_eq!(s.unknowns, ["x", "y"]);
        assert_eq!(s.equations.len(), 1);
        assert_eq!(s.equations[0].to_string(), "x^2 + y^2 - 25");
        let s = parse_diophantine("x*y = 6; x + y = 5").unwrap();
        assert_eq!(s.equations.len(), 2);
        assert!(matches!(parse_diophantine("3x^3 - 2"), Err(Error::Syntax { line: 1, column: 9, .. })));
    }

    #[test]
    fn declarations() {
        let s = parse_diophantine("vars n").unwrap();
        assert_eq!(s.unknowns, ["n"]);
        assert!(s.equations.is_empty());
        let s = parse_diophantine("# two unknowns\nvars b, a\na = 2*b\n").unwrap();
        assert_eq!(s.unknowns, ["b", "a"]);
        match parse_diophantine("vars x\nx = y + 1") {
            Err(Error::UnknownIdentifier { name, line, column }) => {
                assert_eq!((name.as_str(), line, column), ("y", 2, 5));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_diophantine("vars x, x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_diophantine("z1 = 0"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn malformed() {
        for bad in ["x = ", "= 3", "x = 1 = 2", "x ^ y = 1", "x_1 = 2", "(x = 1"] {
            assert!(matches!(parse_diophantine(bad), Err(Error::Syntax { .. })), "{bad}");
        }
    }
}
