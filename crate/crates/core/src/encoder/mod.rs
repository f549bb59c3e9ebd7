//! Positive-existential encodings of integer Diophantine systems.
//!
//! Each unknown `n` is pinned to ℤ by four shifted copies of a set `S`:
//! `n − k ∈ S` for some `k ∈ {0,1,2,3}`, where membership in `S` says that
//! `n − k` is constant and `v − (n − k)` vanishes at the place, with
//! `(x, y) = 2(a, b) ⊕ (z, 1)` on the curve and `2(x − 1) = (z − 1)·y·v`.
//!
//! Terms are written in `z1 = z − 1` and `z2 = δ + 2`. Lowering to a dialect
//! runs [`expand_curve_ops`], then (for the ring dialects) splits function
//! variables into numerator/denominator pairs, then [`expand_neq`], then the
//! constant test of the dialect.

mod dio;
mod render;
mod term;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

pub use dio::{parse_diophantine, DioSystem, RESERVED};
pub use render::{parse_formula, random_formula, render_formula, Format};
pub use term::{Monomial, Term};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dialect {
    /// Meromorphic functions: `C` predicate, `eval`, `u ≠ 0` as `∃w uw = 1`.
    Meromorphic,
    /// Analytic functions: numerator/denominator pairs and `eval(a, b)`.
    Analytic,
    /// Entire functions on ℂ^m: pairs, `c² = n⁵ − 1` as the constant test,
    /// `u ≠ 0` through divisibility.
    EntireCm,
}

impl Dialect {
    pub const ALL: [Dialect; 3] = [Dialect::Meromorphic, Dialect::Analytic, Dialect::EntireCm];

    pub fn name(self) -> &'static str {
        match self {
            Dialect::Meromorphic => "meromorphic",
            Dialect::Analytic => "analytic",
            Dialect::EntireCm => "entire-cm",
        }
    }

    fn splits_variables(self) -> bool {
        self != Dialect::Meromorphic
    }
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dialect {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "meromorphic" => Ok(Dialect::Meromorphic),
            "analytic" => Ok(Dialect::Analytic),
            "entire-cm" => Ok(Dialect::EntireCm),
            _ => Err(Error::Config(format!("unknown dialect `{s}`"))),
        }
    }
}

/// A point built from affine points by doubling and addition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointExpr {
    Infinity,
    Pt(Term, Term),
    Double(Box<PointExpr>),
    Add(Box<PointExpr>, Box<PointExpr>),
}

impl PointExpr {
    fn terms(&self) -> Vec<&Term> {
        match self {
            PointExpr::Infinity => vec![],
            PointExpr::Pt(a, b) => vec![a, b],
            PointExpr::Double(p) => p.terms(),
            PointExpr::Add(p, q) => p.terms().into_iter().chain(q.terms()).collect(),
        }
    }

    fn map_terms(&self, f: &mut impl FnMut(&Term) -> Term) -> PointExpr {
        match self {
            PointExpr::Infinity => PointExpr::Infinity,
            PointExpr::Pt(a, b) => PointExpr::Pt(f(a), f(b)),
            PointExpr::Double(p) => PointExpr::Double(Box::new(p.map_terms(f))),
            PointExpr::Add(p, q) => PointExpr::Add(Box::new(p.map_terms(f)), Box::new(q.map_terms(f))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    PolyEq(Term, Term),
    Eval(Term),
    /// `b ≠ 0` and `eval(a/b)`.
    EvalPair(Term, Term),
    Neq(Term),
    InC(Term),
    /// `(x, y) = P` on the twisted curve; removed by [`expand_curve_ops`].
    CurveRel { x: Term, y: Term, point: PointExpr },
}

impl Atom {
    pub fn kind(&self) -> &'static str {
        match self {
            Atom::PolyEq(..) => "eq",
            Atom::Eval(_) => "eval",
            Atom::EvalPair(..) => "eval_pair",
            Atom::Neq(_) => "neq",
            Atom::InC(_) => "in_c",
            Atom::CurveRel { .. } => "curve",
        }
    }

    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::PolyEq(a, b) | Atom::EvalPair(a, b) => vec![a, b],
            Atom::Eval(a) | Atom::Neq(a) | Atom::InC(a) => vec![a],
            Atom::CurveRel { x, y, point } => [x, y].into_iter().chain(point.terms()).collect(),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        self.terms().into_iter().flat_map(|t| t.vars()).collect()
    }

    fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Atom {
        match self {
            Atom::PolyEq(a, b) => Atom::PolyEq(f(a), f(b)),
            Atom::Eval(a) => Atom::Eval(f(a)),
            Atom::EvalPair(a, b) => Atom::EvalPair(f(a), f(b)),
            Atom::Neq(a) => Atom::Neq(f(a)),
            Atom::InC(a) => Atom::InC(f(a)),
            Atom::CurveRel { x, y, point } => Atom::CurveRel { x: f(x), y: f(y), point: point.map_terms(&mut f) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    And(Vec<Node>),
    Or(Vec<Node>),
    Atom(Atom),
}

impl Node {
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a Atom>) {
        match self {
            Node::And(c) | Node::Or(c) => c.iter().for_each(|n| n.collect_atoms(out)),
            Node::Atom(a) => out.push(a),
        }
    }

    fn map_atoms(self, f: &mut impl FnMut(Atom) -> Node) -> Node {
        match self {
            Node::And(c) => Node::And(c.into_iter().map(|n| n.map_atoms(f)).collect()),
            Node::Or(c) => Node::Or(c.into_iter().map(|n| n.map_atoms(f)).collect()),
            Node::Atom(a) => f(a),
        }
    }

    fn mentions(&self, v: &str) -> bool {
        self.atoms().iter().any(|a| a.vars().contains(v))
    }

    fn occurrences(&self, v: &str) -> usize {
        self.atoms().iter().filter(|a| a.vars().contains(v)).count()
    }

    /// Merges nested nodes of the same kind and unwraps single-child nodes.
    fn flatten(self) -> Node {
        let merge = |c: Vec<Node>, and: bool| {
            let mut out = Vec::new();
            for n in c.into_iter().map(Node::flatten) {
                match n {
                    Node::And(inner) if and => out.extend(inner),
                    Node::Or(inner) if !and => out.extend(inner),
                    n => out.push(n),
                }
            }
            out
        };
        match self {
            Node::And(c) => {
                let mut c = merge(c, true);
                if c.len() == 1 { c.pop().unwrap() } else { Node::And(c) }
            }
            Node::Or(c) => {
                let mut c = merge(c, false);
                if c.len() == 1 { c.pop().unwrap() } else { Node::Or(c) }
            }
            a => a,
        }
    }
}

/// `∃ vars. matrix`, with no negation and no universal quantifier.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    pub vars: Vec<String>,
    pub matrix: Node,
}

impl Formula {
    pub fn atoms(&self) -> Vec<&Atom> {
        self.matrix.atoms()
    }

    pub fn count(&self, kind: &str) -> usize {
        self.atoms().iter().filter(|a| a.kind() == kind).count()
    }

    /// Declared variables that no atom mentions.
    pub fn dead_vars(&self) -> Vec<String> {
        let used: BTreeSet<String> = self.atoms().iter().flat_map(|a| a.vars()).collect();
        self.vars.iter().filter(|v| !used.contains(*v)).cloned().collect()
    }

    /// Variables in atoms that are neither declared nor `z1`, `z2`.
    pub fn undeclared_vars(&self) -> Vec<String> {
        let declared: BTreeSet<&str> = self.vars.iter().map(String::as_str).chain(RESERVED).collect();
        let used: BTreeSet<String> = self.atoms().iter().flat_map(|a| a.vars()).collect();
        used.into_iter().filter(|v| !declared.contains(v.as_str())).collect()
    }

    /// Atom kinds the dialect forbids in fully lowered output, with counts.
    pub fn dialect_violations(&self, dialect: Dialect) -> Vec<(&'static str, usize)> {
        let forbidden: &[&str] = match dialect {
            Dialect::Meromorphic => &["eval_pair", "neq", "curve"],
            Dialect::Analytic => &["eval", "curve"],
            Dialect::EntireCm => &["eval", "in_c", "neq", "curve"],
        };
        forbidden.iter().map(|k| (*k, self.count(k))).filter(|(_, c)| *c > 0).collect()
    }
}

/// Fresh names `<block>_<role>_<counter>`, the counter unique per formula.
struct Namer {
    next: usize,
}

impl Namer {
    fn after(f: &Formula) -> Namer {
        let next = f.vars.iter().filter_map(|v| split_name(v)).map(|(_, _, c)| c + 1).max().unwrap_or(0);
        Namer { next }
    }

    fn fresh(&mut self, block: &str, role: &str) -> String {
        self.next += 1;
        format!("{block}_{role}_{}", self.next - 1)
    }
}

fn split_name(v: &str) -> Option<(&str, &str, usize)> {
    let mut it = v.rsplitn(3, '_');
    let counter = it.next()?.parse().ok()?;
    let role = it.next()?;
    let block = it.next()?;
    (!block.is_empty() && !role.is_empty()).then_some((block, role, counter))
}

/// Block of the first generated name in `t`, else its first free name.
fn block_of(t: &Term) -> String {
    let vars = t.vars();
    vars.iter()
        .find_map(|v| split_name(v).map(|(b, _, _)| b.to_string()))
        .or_else(|| vars.iter().find(|v| !RESERVED.contains(&v.as_str())).cloned())
        .unwrap_or_else(|| "g".into())
}

fn v(name: &str) -> Term {
    Term::var(name)
}

fn z() -> Term {
    &v("z1") + &Term::one()
}

fn delta() -> Term {
    &v("z2") - &Term::int(2)
}

/// `w³ + δw² + w`.
pub fn cubic(w: &Term) -> Term {
    &(&w.pow(3) + &(&delta() * &w.pow(2))) + w
}

/// `3w² + 2δw + 1`.
pub fn cubic_prime(w: &Term) -> Term {
    &(&w.pow(2).scale(&3.into()) + &(&delta() * w).scale(&2.into())) + &Term::one()
}

/// `f(z)`, the twist: a point `(a, b)` stands for `(a, s·b)` with `s² = f(z)`.
pub fn twist() -> Term {
    cubic(&z())
}

/// The symbolic `S`-membership conjunction for `subject` (before lowering).
fn membership(subject: &Term, block: &str, namer: &mut Namer, vars: &mut Vec<String>) -> Node {
    let names: Vec<String> = ["a", "b", "x", "y", "v"].iter().map(|r| namer.fresh(block, r)).collect();
    vars.extend(names.iter().cloned());
    let [a, b, x, y, vv] = [0, 1, 2, 3, 4].map(|i| v(&names[i]));
    let atoms = vec![
        Atom::InC(subject.clone()),
        Atom::PolyEq(&twist() * &b.pow(2), cubic(&a)),
        Atom::Neq(y.clone()),
        Atom::CurveRel {
            x: x.clone(),
            y: y.clone(),
            point: PointExpr::Add(
                Box::new(PointExpr::Double(Box::new(PointExpr::Pt(a, b)))),
                Box::new(PointExpr::Pt(z(), Term::one())),
            ),
        },
        Atom::PolyEq((&x - &Term::one()).scale(&2.into()), &(&v("z1") * &y) * &vv),
        Atom::Eval(&vv - subject),
    ];
    Node::And(atoms.into_iter().map(Node::Atom).collect())
}

/// Symbolic formula for a system: one four-branch block per unknown, then
/// the equations. Curve relations are still present.
pub fn encode_symbolic(sys: &DioSystem) -> Formula {
    let mut namer = Namer { next: 0 };
    let mut vars = sys.unknowns.clone();
    let mut parts = Vec::new();
    for u in &sys.unknowns {
        let branches = (0..4)
            .map(|k| {
                let subject = &v(u) - &Term::int(k);
                membership(&subject, &format!("{u}_s{k}"), &mut namer, &mut vars)
            })
            .collect();
        parts.push(Node::Or(branches));
    }
    parts.extend(sys.equations.iter().map(|e| Node::Atom(Atom::PolyEq(e.clone(), Term::zero()))));
    let matrix = if parts.len() == 1 { parts.pop().unwrap() } else { Node::And(parts) };
    Formula { vars, matrix }
}

/// The encoding of a whole system in a dialect.
pub fn encode_system(sys: &DioSystem, dialect: Dialect) -> Formula {
    let f = expand_curve_ops(&encode_symbolic(sys));
    let f = if dialect.splits_variables() {
        let keep: BTreeSet<String> = sys.unknowns.iter().cloned().collect();
        split_pairs(&f, &keep)
    } else {
        f
    };
    let f = expand_neq(&f, dialect);
    expand_constant_tests(&f, dialect)
}

/// `n ∈ ℤ` for a single unknown `n`.
pub fn encode_integer_predicate(var: &str, dialect: Dialect) -> Formula {
    encode_system(&DioSystem { unknowns: vec![var.to_string()], equations: vec![] }, dialect)
}

struct Emitter<'a> {
    namer: &'a mut Namer,
    vars: Vec<String>,
    atoms: Vec<Atom>,
}

impl Emitter<'_> {
    fn fresh(&mut self, block: &str, role: &str) -> Term {
        let name = self.namer.fresh(block, role);
        self.vars.push(name.clone());
        v(&name)
    }

    fn unsatisfiable(&mut self) {
        self.atoms.push(Atom::PolyEq(Term::one(), Term::zero()));
    }

    /// Affine coordinates of `p`, or `None` for the point at infinity.
    fn reduce(&mut self, p: &PointExpr, block: &str) -> Option<(Term, Term)> {
        match p {
            PointExpr::Infinity => None,
            PointExpr::Pt(a, b) => Some((a.clone(), b.clone())),
            PointExpr::Double(_) | PointExpr::Add(..) => {
                let target = (self.fresh(block, "p"), self.fresh(block, "q"));
                self.relate(&target, p, block).then_some(target)
            }
        }
    }

    /// Emits `target = p`. Returns false when `p` is the point at infinity.
    fn relate(&mut self, target: &(Term, Term), p: &PointExpr, block: &str) -> bool {
        match p {
            PointExpr::Infinity => false,
            PointExpr::Pt(..) => {
                self.atoms.push(Atom::CurveRel { x: target.0.clone(), y: target.1.clone(), point: p.clone() });
                true
            }
            PointExpr::Double(q) => match self.reduce(q, block) {
                None => false,
                Some(p1) => {
                    self.doubling(target, &p1, block);
                    true
                }
            },
            PointExpr::Add(q1, q2) => match (self.reduce(q1, block), self.reduce(q2, block)) {
                (None, None) => false,
                (Some((a, b)), None) | (None, Some((a, b))) => self.relate(target, &PointExpr::Pt(a, b), block),
                (Some(p1), Some(p2)) => {
                    self.addition(target, &p1, &p2, block);
                    true
                }
            },
        }
    }

    fn third_point(&mut self, (x3, y3): &(Term, Term), (a1, b1): &(Term, Term), m: &Term, x_rel: Term) {
        let chord = &(b1 - &(a1 * m)).pow(2) * &twist();
        self.atoms.push(Atom::PolyEq(x_rel, chord));
        self.atoms.push(Atom::PolyEq(y3.clone(), &(-b1) - &(m * &(x3 - a1))));
    }

    /// `target = 2·p1`, slope `m` with `2f(z)·b₁·m = 3a₁² + 2δa₁ + 1`.
    fn doubling(&mut self, target: &(Term, Term), p1: &(Term, Term), block: &str) {
        let m = self.fresh(block, "m");
        let (a1, b1) = p1;
        self.atoms.push(Atom::PolyEq(&(&twist() * b1).scale(&2.into()) * &m, cubic_prime(a1)));
        self.third_point(target, p1, &m, &target.0 * &a1.pow(2));
        self.atoms.push(Atom::Neq(b1.scale(&2.into())));
    }

    /// `target = p1 ⊕ p2` through the chord, slope `m(a₂ − a₁) = b₂ − b₁`.
    fn addition(&mut self, target: &(Term, Term), p1: &(Term, Term), p2: &(Term, Term), block: &str) {
        let m = self.fresh(block, "m");
        let ((a1, b1), (a2, b2)) = (p1, p2);
        self.atoms.push(Atom::PolyEq(&m * &(a2 - a1), b2 - b1));
        self.third_point(target, p1, &m, &(&target.0 * a1) * a2);
        self.atoms.push(Atom::Neq(a2 - a1));
        self.atoms.push(Atom::Neq(a1 * a2));
    }
}

/// Replaces every curve relation by polynomial atoms: the chord or tangent
/// with an existential slope and `≠` guards on the divisors. A relation
/// `(x, y) = P ⊕ ∞` with `x, y` existential becomes a substitution.
pub fn expand_curve_ops(f: &Formula) -> Formula {
    let mut namer = Namer::after(f);
    let mut vars = f.vars.clone();
    let matrix = f.matrix.clone().map_atoms(&mut |a| match a {
        Atom::CurveRel { x, y, point } => {
            let block = block_of(&x);
            let mut em = Emitter { namer: &mut namer, vars: Vec::new(), atoms: Vec::new() };
            if !em.relate(&(x, y), &point, &block) {
                em.unsatisfiable();
            }
            vars.extend(em.vars);
            Node::And(em.atoms.into_iter().map(Node::Atom).collect())
        }
        a => Node::Atom(a),
    });
    let matrix = matrix.flatten();
    let mut out = Formula { vars, matrix };
    resolve_identities(&mut out);
    out
}

/// Turns the remaining `(x, y) = (a, b)` relations into substitutions where
/// that is sound (`x`, `y` declared and mentioned only in the enclosing
/// conjunction), else into two equations.
fn resolve_identities(f: &mut Formula) {
    let total: BTreeMap<String, usize> = f.vars.iter().map(|v| (v.clone(), f.matrix.occurrences(v))).collect();
    let mut removed = Vec::new();
    f.matrix = substitute_in(f.matrix.clone(), &f.vars, &total, &mut removed);
    f.vars.retain(|v| !removed.contains(v));
}

fn substitute_in(node: Node, vars: &[String], total: &BTreeMap<String, usize>, removed: &mut Vec<String>) -> Node {
    let mut children = match node {
        Node::Or(c) => {
            return Node::Or(c.into_iter().map(|n| substitute_in(n, vars, total, removed)).collect());
        }
        Node::And(c) => c,
        a @ Node::Atom(_) => vec![a],
    };
    let mut i = 0;
    while i < children.len() {
        let Node::Atom(Atom::CurveRel { x, y, point: PointExpr::Pt(a, b) }) = &children[i] else {
            i += 1;
            continue;
        };
        let scope = Node::And(children.clone());
        let (x, y, a, b) = (x.clone(), y.clone(), a.clone(), b.clone());
        let free = |t: &Term| {
            t.as_var()
                .filter(|n| vars.iter().any(|v| v == n))
                .filter(|n| !a.vars().contains(*n) && !b.vars().contains(*n))
                .filter(|n| scope.occurrences(n) == total[*n])
                .map(str::to_string)
        };
        match (free(&x), free(&y)) {
            (Some(xn), Some(yn)) if xn != yn => {
                children.remove(i);
                children = children
                    .into_iter()
                    .map(|n| n.map_atoms(&mut |at| Node::Atom(at.map_terms(|t| t.substitute(&xn, &a).substitute(&yn, &b)))))
                    .collect();
                removed.extend([xn, yn]);
            }
            _ => {
                children[i] = Node::Atom(Atom::PolyEq(x, a));
                children.insert(i + 1, Node::Atom(Atom::PolyEq(y, b)));
                i += 2;
            }
        }
    }
    let children = children
        .into_iter()
        .map(|n| match n {
            n @ (Node::And(_) | Node::Or(_)) => substitute_in(n, vars, total, removed),
            n => n,
        })
        .collect();
    Node::And(children).flatten()
}

fn pair_names(name: &str) -> (String, String) {
    match split_name(name) {
        Some((b, r, c)) => (format!("{b}_{r}num_{c}"), format!("{b}_{r}den_{c}")),
        None => (format!("{name}_num_0"), format!("{name}_den_0")),
    }
}

/// Clears denominators of `t` with each split variable `w` replaced by
/// `num/den`, using the exponents `degs` (at least the degree of `t` in `w`).
fn homogenize(t: &Term, degs: &BTreeMap<String, u32>, names: &BTreeMap<String, (String, String)>) -> Term {
    t.map_monomials(|m| {
        let mut out = Vec::new();
        for (w, e) in m {
            match names.get(w) {
                Some((n, _)) => out.push((n.clone(), *e)),
                None => out.push((w.clone(), *e)),
            }
        }
        for (w, d) in degs {
            let e = term::exponent(m, w);
            out.push((names[w].1.clone(), d - e));
        }
        out
    })
}

fn denominator(degs: &BTreeMap<String, u32>, names: &BTreeMap<String, (String, String)>) -> Term {
    degs.iter().fold(Term::one(), |acc, (w, d)| &acc * &v(&names[w].1).pow(*d))
}

fn degrees(ts: &[&Term], split: &BTreeMap<String, (String, String)>) -> BTreeMap<String, u32> {
    split
        .keys()
        .map(|w| (w.clone(), ts.iter().map(|t| t.degree_in(w)).max().unwrap_or(0)))
        .filter(|(_, d)| *d > 0)
        .collect()
}

/// Replaces each declared variable outside `keep` by a numerator/denominator
/// pair, clears denominators, and guards every denominator with `≠ 0`.
pub fn split_pairs(f: &Formula, keep: &BTreeSet<String>) -> Formula {
    let mut namer = Namer::after(f);
    let split: BTreeMap<String, (String, String)> =
        f.vars.iter().filter(|v| !keep.contains(*v)).map(|v| (v.clone(), pair_names(v))).collect();
    let mut vars = Vec::new();
    for w in &f.vars {
        match split.get(w) {
            Some((n, d)) => vars.extend([n.clone(), d.clone()]),
            None => vars.push(w.clone()),
        }
    }
    let h = |ts: &[&Term]| degrees(ts, &split);
    let matrix = f.matrix.clone().map_atoms(&mut |a| {
        let atom = match &a {
            Atom::PolyEq(l, r) => {
                let d = h(&[l, r]);
                Atom::PolyEq(homogenize(l, &d, &split), homogenize(r, &d, &split))
            }
            Atom::Eval(t) => {
                let d = h(&[t]);
                Atom::EvalPair(homogenize(t, &d, &split), denominator(&d, &split))
            }
            Atom::EvalPair(p, q) => {
                let (dp, dq) = (h(&[p]), h(&[q]));
                Atom::EvalPair(
                    &homogenize(p, &dp, &split) * &denominator(&dq, &split),
                    &homogenize(q, &dq, &split) * &denominator(&dp, &split),
                )
            }
            Atom::Neq(t) => Atom::Neq(homogenize(t, &h(&[t]), &split)),
            Atom::InC(t) => {
                let d = h(&[t]);
                if d.is_empty() {
                    return Node::Atom(a);
                }
                let c = namer.fresh(&block_of(t), "c");
                vars.push(c.clone());
                return Node::And(vec![
                    Node::Atom(Atom::InC(v(&c))),
                    Node::Atom(Atom::PolyEq(homogenize(t, &d, &split), &v(&c) * &denominator(&d, &split))),
                ]);
            }
            Atom::CurveRel { .. } => a.clone(),
        };
        Node::Atom(atom)
    });
    let guards = f.vars.iter().filter_map(|w| split.get(w)).map(|(n, d)| (n.clone(), v(d))).collect();
    let matrix = place_guards(matrix, guards).flatten();
    Formula { vars, matrix }
}

/// Conjoins each `den ≠ 0` guard at the innermost node holding every
/// occurrence of its numerator.
fn place_guards(node: Node, guards: Vec<(String, Term)>) -> Node {
    if guards.is_empty() {
        return node;
    }
    let (children, is_and) = match node {
        Node::And(c) => (c, true),
        Node::Or(c) => (c, false),
        a @ Node::Atom(_) => {
            let mut c = vec![a];
            c.extend(guards.into_iter().map(|(_, d)| Node::Atom(Atom::Neq(d))));
            return Node::And(c);
        }
    };
    let mut pushed: Vec<Vec<(String, Term)>> = vec![Vec::new(); children.len()];
    let mut here = Vec::new();
    for (n, d) in guards {
        let holders: Vec<usize> = (0..children.len()).filter(|&i| children[i].mentions(&n)).collect();
        match holders.as_slice() {
            [i] if !matches!(children[*i], Node::Atom(_)) => pushed[*i].push((n, d)),
            _ => here.push(Node::Atom(Atom::Neq(d))),
        }
    }
    let children: Vec<Node> = children.into_iter().zip(pushed).map(|(c, g)| place_guards(c, g)).collect();
    if is_and {
        let mut c = children;
        c.extend(here);
        Node::And(c)
    } else if here.is_empty() {
        Node::Or(children)
    } else {
        let mut c = vec![Node::Or(children)];
        c.extend(here);
        Node::And(c)
    }
}

/// Rewrites `u ≠ 0` for the dialect: `∃w uw = 1` over fields, unchanged for
/// analytic functions, and `∃ρ,τ ∈ ℂ (τ | 1 ∧ z1 − ρ | u − τ)` over entire
/// functions on ℂ^m with divisibility spelled out.
pub fn expand_neq(f: &Formula, dialect: Dialect) -> Formula {
    if dialect == Dialect::Analytic {
        return f.clone();
    }
    let mut namer = Namer::after(f);
    let mut vars = f.vars.clone();
    let matrix = f.matrix.clone().map_atoms(&mut |a| match a {
        Atom::Neq(u) => {
            let block = block_of(&u);
            let mut fresh = |role: &str| {
                let n = namer.fresh(&block, role);
                vars.push(n.clone());
                v(&n)
            };
            match dialect {
                Dialect::Meromorphic => {
                    let w = fresh("inv");
                    Node::Atom(Atom::PolyEq(&u * &w, Term::one()))
                }
                _ => {
                    let (rho, tau, w3, w4) = (fresh("rho"), fresh("tau"), fresh("w"), fresh("w"));
                    Node::And(vec![
                        Node::Atom(Atom::PolyEq(&tau * &w3, Term::one())),
                        Node::Atom(Atom::PolyEq(&u - &tau, &(&v("z1") - &rho) * &w4)),
                        Node::Atom(Atom::InC(rho)),
                        Node::Atom(Atom::InC(tau)),
                    ])
                }
            }
        }
        a => Node::Atom(a),
    });
    Formula { vars, matrix: matrix.flatten() }
}

/// Over entire functions on ℂ^m the constant test `C(n)` becomes
/// `∃c c² = n⁵ − 1`; other dialects keep `C`.
pub fn expand_constant_tests(f: &Formula, dialect: Dialect) -> Formula {
    if dialect != Dialect::EntireCm {
        return f.clone();
    }
    let mut namer = Namer::after(f);
    let mut vars = f.vars.clone();
    let matrix = f.matrix.clone().map_atoms(&mut |a| match a {
        Atom::InC(n) => {
            let c = namer.fresh(&block_of(&n), "c");
            vars.push(c.clone());
            Node::Atom(Atom::PolyEq(v(&c).pow(2), &n.pow(5) - &Term::one()))
        }
        a => Node::Atom(a),
    });
    Formula { vars, matrix: matrix.flatten() }
}
