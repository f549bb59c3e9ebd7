//! Text and JSON renderings of formulas, and the JSON reader.
//!
//! JSON shape: `{"vars": [...], "matrix": node}` where a node is
//! `{"op": "and" | "or", "args": [node, ...]}` or an atom
//! `{"kind": ..., "args": [term, ...]}` with terms as strings.

use std::fmt::Write as _;

use rand::Rng;
use serde_json::{json, Value};

use super::term::{Lexer, Term};
use super::{Atom, Formula, Node, PointExpr};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!("unknown format `{s}`"))),
        }
    }
}

pub fn render_formula(f: &Formula, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({ "vars": f.vars, "matrix": node_json(&f.matrix) });
            let mut s = serde_json::to_string_pretty(&v).expect("formula JSON");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = format!("exists {}:\n", f.vars.join(", "));
            node_text(&f.matrix, 1, &mut s);
            s
        }
    }
}

fn point_string(p: &PointExpr) -> String {
    match p {
        PointExpr::Infinity => "inf".into(),
        PointExpr::Pt(a, b) => format!("({a}, {b})"),
        PointExpr::Double(q) => format!("dbl({})", point_string(q)),
        PointExpr::Add(q, r) => format!("add({}, {})", point_string(q), point_string(r)),
    }
}

fn atom_args(a: &Atom) -> Vec<String> {
    match a {
        Atom::CurveRel { x, y, point } => vec![x.to_string(), y.to_string(), point_string(point)],
        a => a.terms().iter().map(|t| t.to_string()).collect(),
    }
}

fn node_json(n: &Node) -> Value {
    match n {
        Node::And(c) => json!({ "op": "and", "args": c.iter().map(node_json).collect::<Vec<_>>() }),
        Node::Or(c) => json!({ "op": "or", "args": c.iter().map(node_json).collect::<Vec<_>>() }),
        Node::Atom(a) => json!({ "kind": a.kind(), "args": atom_args(a) }),
    }
}

fn atom_text(a: &Atom) -> String {
    match a {
        Atom::PolyEq(l, r) => format!("{l} = {r}"),
        Atom::Eval(t) => format!("eval({t})"),
        Atom::EvalPair(p, q) => format!("eval({p}, {q})"),
        Atom::Neq(t) => format!("{t} != 0"),
        Atom::InC(t) => format!("C({t})"),
        Atom::CurveRel { x, y, point } => format!("({x}, {y}) = {}", point_string(point)),
    }
}

fn node_text(n: &Node, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match n {
        Node::And(c) | Node::Or(c) => {
            let op = if matches!(n, Node::And(_)) { "and" } else { "or" };
            let _ = writeln!(out, "{pad}{op}");
            c.iter().for_each(|m| node_text(m, depth + 1, out));
        }
        Node::Atom(a) => {
            let _ = writeln!(out, "{pad}{}", atom_text(a));
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Config(format!("malformed formula JSON: {}", msg.into()))
}

/// Inverse of the JSON rendering.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let v: Value = serde_json::from_str(text)?;
    let vars = v
        .get("vars")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `vars`"))?
        .iter()
        .map(|x| x.as_str().map(str::to_string).ok_or_else(|| bad("`vars` must hold strings")))
        .collect::<Result<Vec<_>>>()?;
    let matrix = node_from(v.get("matrix").ok_or_else(|| bad("missing `matrix`"))?)?;
    Ok(Formula { vars, matrix })
}

fn node_from(v: &Value) -> Result<Node> {
    let args = v.get("args").and_then(Value::as_array).ok_or_else(|| bad("node without `args`"))?;
    if let Some(op) = v.get("op").and_then(Value::as_str) {
        let c = args.iter().map(node_from).collect::<Result<Vec<_>>>()?;
        return match op {
            "and" => Ok(Node::And(c)),
            "or" => Ok(Node::Or(c)),
            _ => Err(bad(format!("unknown op `{op}`"))),
        };
    }
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| bad("node without `op` or `kind`"))?;
    let strs = args
        .iter()
        .map(|a| a.as_str().ok_or_else(|| bad("atom arguments must be strings")))
        .collect::<Result<Vec<_>>>()?;
    let terms = || strs.iter().map(|s| s.parse::<Term>()).collect::<Result<Vec<_>>>();
    let arity = |n: usize| if strs.len() == n { Ok(()) } else { Err(bad(format!("`{kind}` takes {n} arguments"))) };
    let atom = match kind {
        "eq" | "eval_pair" => {
            arity(2)?;
            let mut t = terms()?;
            let (b, a) = (t.pop().unwrap(), t.pop().unwrap());
            if kind == "eq" { Atom::PolyEq(a, b) } else { Atom::EvalPair(a, b) }
        }
        "eval" | "neq" | "in_c" => {
            arity(1)?;
            let a = terms()?.pop().unwrap();
            match kind {
                "eval" => Atom::Eval(a),
                "neq" => Atom::Neq(a),
                _ => Atom::InC(a),
            }
        }
        "curve" => {
            arity(3)?;
            let mut lx = Lexer::new(strs[2], true);
            let point = point_from(&mut lx)?;
            lx.expect_end()?;
            Atom::CurveRel { x: strs[0].parse()?, y: strs[1].parse()?, point }
        }
        _ => return Err(bad(format!("unknown atom kind `{kind}`"))),
    };
    Ok(Node::Atom(atom))
}

fn point_from(lx: &mut Lexer) -> Result<PointExpr> {
    let expect = |lx: &mut Lexer, c: char| {
        if lx.eat(c) {
            Ok(())
        } else {
            let at = lx.offset();
            Err(lx.err_at(at, format!("expected `{c}`")))
        }
    };
    if lx.eat('(') {
        let a = lx.expr()?;
        expect(lx, ',')?;
        let b = lx.expr()?;
        expect(lx, ')')?;
        return Ok(PointExpr::Pt(a, b));
    }
    lx.peek();
    let at = lx.offset();
    let p = match lx.ident().as_deref() {
        Some("inf") => PointExpr::Infinity,
        Some("dbl") => {
            expect(lx, '(')?;
            let p = point_from(lx)?;
            expect(lx, ')')?;
            PointExpr::Double(Box::new(p))
        }
        Some("add") => {
            expect(lx, '(')?;
            let p = point_from(lx)?;
            expect(lx, ',')?;
            let q = point_from(lx)?;
            expect(lx, ')')?;
            PointExpr::Add(Box::new(p), Box::new(q))
        }
        _ => return Err(lx.err_at(at, "expected a point")),
    };
    Ok(p)
}

/// A random formula over a few variables, for round-trip testing.
pub fn random_formula(rng: &mut impl Rng) -> Formula {
    let pool = ["n", "x_s0_a_0", "x_s0_b_1", "y_s2_v_7", "q_s3_m_12", "m"];
    let nv = rng.gen_range(1..=pool.len());
    let vars: Vec<String> = pool[..nv].iter().map(|s| s.to_string()).collect();
    let matrix = random_node(rng, &vars, 3);
    Formula { vars, matrix }
}

fn random_term(rng: &mut impl Rng, vars: &[String]) -> Term {
    let names: Vec<&str> = vars.iter().map(String::as_str).chain(["z1", "z2"]).collect();
    let mut t = Term::zero();
    for _ in 0..rng.gen_range(0..4) {
        let mut m = Term::int(rng.gen_range(-40..=40));
        for _ in 0..rng.gen_range(0..3) {
            m = &m * &Term::var(names[rng.gen_range(0..names.len())]).pow(rng.gen_range(1..4));
        }
        t = &t + &m;
    }
    t
}

fn random_point(rng: &mut impl Rng, vars: &[String], depth: u32) -> PointExpr {
    match rng.gen_range(0..if depth == 0 { 2 } else { 4 }) {
        0 => PointExpr::Infinity,
        1 => PointExpr::Pt(random_term(rng, vars), random_term(rng, vars)),
        2 => PointExpr::Double(Box::new(random_point(rng, vars, depth - 1))),
        _ => PointExpr::Add(
            Box::new(random_point(rng, vars, depth - 1)),
            Box::new(random_point(rng, vars, depth - 1)),
        ),
    }
}

fn random_node(rng: &mut impl Rng, vars: &[String], depth: u32) -> Node {
    if depth == 0 || rng.gen_bool(0.4) {
        let kind = rng.gen_range(0..6);
        let (a, b) = (random_term(rng, vars), random_term(rng, vars));
        let atom = match kind {
            0 => Atom::PolyEq(a, b),
            1 => Atom::Eval(a),
            2 => Atom::EvalPair(a, b),
            3 => Atom::Neq(a),
            4 => Atom::InC(a),
            _ => Atom::CurveRel { x: a, y: b, point: random_point(rng, vars, 2) },
        };
        return Node::Atom(atom);
    }
    let c = (0..rng.gen_range(0..4)).map(|_| random_node(rng, vars, depth - 1)).collect();
    if rng.gen_bool(0.5) { Node::And(c) } else { Node::Or(c) }
}
