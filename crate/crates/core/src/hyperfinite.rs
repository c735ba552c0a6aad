//! Edge cuts that break a graph into small pieces.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Rational;

/// Removing `removed_edges` leaves components of at most `k` vertices, and
/// at most `epsilon·|V|` edges are removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutWitness {
    pub k: usize,
    pub epsilon: Rational,
    pub removed_edges: Vec<(usize, usize)>,
}

/// `⌈c/ε⌉` for `ε > 0`.
fn ceil_div(c: u64, epsilon: &Rational) -> Result<usize> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} must be positive")));
    }
    let q = Rational::from_integer(BigInt::from(c)) / epsilon;
    let (d, r) = q.numer().div_rem(q.denom());
    let k = if r == BigInt::from(0) { d } else { d + 1 };
    k.to_usize().ok_or_else(|| Error::InvalidParameter(format!("epsilon {epsilon} is too small")))
}

/// Cut for the path `e_1 ⋯ e_n` on `n + 1` vertices, where `e_i` joins `i − 1` and `i`:
/// with `k = ⌈1/ε⌉`, removes `e_i` for every multiple `i` of `k`.
pub fn path_cut(n: usize, epsilon: &Rational) -> Result<CutWitness> {
    if n == 0 {
        return Err(Error::InvalidParameter("path cut needs n ≥ 1".into()));
    }
    let k = ceil_div(1, epsilon)?;
    let removed_edges = (k..=n).step_by(k).map(|i| (i - 1, i)).collect();
    Ok(CutWitness { k, epsilon: epsilon.clone(), removed_edges })
}

/// Cut for the cycle on `n ≥ 3` vertices with `k = ⌈2/ε⌉`. Short cycles are
/// left whole; longer ones lose the edge `{n − 1, 0}` and are then cut as a path.
pub fn cycle_cut(n: usize, epsilon: &Rational) -> Result<CutWitness> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle length {n} is below 3")));
    }
    let k = ceil_div(2, epsilon)?;
    let mut removed_edges = Vec::new();
    if n > k {
        removed_edges.push((0, n - 1));
        removed_edges.extend((k..n).step_by(k).map(|i| (i - 1, i)));
    }
    Ok(CutWitness { k, epsilon: epsilon.clone(), removed_edges })
}

pub fn verify_cut(g: &Graph, w: &CutWitness) -> Result<bool> {
    let mut removed = HashSet::with_capacity(w.removed_edges.len());
    for &(u, v) in &w.removed_edges {
        if u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v) {
            return Err(Error::EdgeNotInGraph(u, v));
        }
        removed.insert((u.min(v), u.max(v)));
    }
    let budget = w.epsilon.clone() * Rational::from_integer(BigInt::from(g.vertex_count()));
    if Rational::from_integer(BigInt::from(removed.len())) > budget {
        return Ok(false);
    }
    let kept = g.edges().filter(|e| !removed.contains(e));
    let rest = Graph::new(g.vertex_count(), kept).expect("subgraph of a simple graph");
    Ok(rest.components().iter().all(|c| c.len() <= w.k))
}

/// Families with a known cut construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Member `n` is the path on `n + 1` vertices.
    Paths,
    /// Member `n` is the cycle on `n` vertices.
    Cycles,
}

impl Family {
    pub fn parameter(self, epsilon: &Rational) -> Result<usize> {
        match self {
            Family::Paths => ceil_div(1, epsilon),
            Family::Cycles => ceil_div(2, epsilon),
        }
    }

    pub fn member(self, n: usize) -> Result<Graph> {
        match self {
            Family::Paths => Ok(Graph::path(n + 1)),
            Family::Cycles => Graph::cycle(n),
        }
    }

    pub fn cut(self, n: usize, epsilon: &Rational) -> Result<CutWitness> {
        match self {
            Family::Paths => path_cut(n, epsilon),
            Family::Cycles => cycle_cut(n, epsilon),
        }
    }
}

/// Cut for member `n` of `families[which]`, stated with the common parameter
/// `max_j k_j(ε)` that works for every member of the union.
pub fn union_cut(families: &[Family], which: usize, n: usize, epsilon: &Rational) -> Result<CutWitness> {
    let family = *families
        .get(which)
        .ok_or_else(|| Error::InvalidParameter(format!("no family at position {which}")))?;
    let mut k = 1;
    for f in families {
        k = k.max(f.parameter(epsilon)?);
    }
    let mut w = family.cut(n, epsilon)?;
    w.k = k;
    Ok(w)
}

/// Largest component size left by a witness.
pub fn max_component(g: &Graph, w: &CutWitness) -> usize {
    let removed: HashSet<(usize, usize)> = w.removed_edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let rest = Graph::new(g.vertex_count(), g.edges().filter(|e| !removed.contains(e))).expect("subgraph");
    rest.components().iter().map(Vec::len).max().unwrap_or(0)
}
