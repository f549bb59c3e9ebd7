use std::fmt;
use std::sync::Arc;

/// Name of an indeterminate.
///
/// Variables order by name, so `t < t1 < t2 < z < δ`; that order is the
/// variable order of every polynomial built from them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(Arc<str>);

impl VarId {
    pub fn new(name: &str) -> Self {
        assert!(!name.is_empty(), "variable names are non-empty");
        VarId(Arc::from(name))
    }

    pub fn z() -> Self {
        VarId::new("z")
    }

    /// The curve parameter δ.
    pub fn delta() -> Self {
        VarId::new("δ")
    }

    /// The uniformizing coordinate t = e^u.
    pub fn t() -> Self {
        VarId::new("t")
    }

    pub fn t1() -> Self {
        VarId::new("t1")
    }

    pub fn t2() -> Self {
        VarId::new("t2")
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Sorted, duplicate-free list of variables shared by the terms of a polynomial.
pub type VarSet = Arc<[VarId]>;

pub fn empty_vars() -> VarSet {
    Arc::from(Vec::<VarId>::new())
}

/// Union of two sorted variable lists, plus the position of each input variable in the union.
pub fn union(a: &[VarId], b: &[VarId]) -> (VarSet, Vec<usize>, Vec<usize>) {
    let mut out: Vec<VarId> = a.iter().chain(b.iter()).cloned().collect();
    out.sort();
    out.dedup();
    let pos = |v: &VarId| out.binary_search(v).expect("variable in union");
    let ma = a.iter().map(pos).collect();
    let mb = b.iter().map(pos).collect();
    (Arc::from(out), ma, mb)
}
