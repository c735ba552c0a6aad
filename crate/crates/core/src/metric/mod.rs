//! The ultrametric on rooted isomorphism classes.
//!
//! Two rooted graphs are at distance `1/(1+r)` where `r` is the largest radius
//! at which their balls are isomorphic. Graphs are accessed through their balls
//! only, so infinite graphs are compared up to a caller-supplied radius.

mod oracles;

pub use oracles::{
    oracle_bi_infinite_path, oracle_cycle, oracle_finite, oracle_path, oracle_s_graph,
    oracle_semi_infinite_path, oracle_tree3, oracle_tree3_ball, Oracle,
};

use std::cmp::Ordering;

use crate::canon::is_rooted_isomorphic;
use crate::error::{Error, Result};
use crate::graph::{Graph, RootedGraph};
use crate::{ExtNat, Scalar};

/// A rooted graph, possibly infinite, described by its closed balls.
///
/// Implementations must be coherent: the radius-`r` ball of `ball_at(s)` is
/// isomorphic to `ball_at(r)` for `r ≤ s`.
pub trait BallOracle {
    fn ball_at(&self, r: usize) -> RootedGraph;

    /// Eccentricity of the root when the graph is finite.
    fn finite_radius(&self) -> Option<usize>;
}

impl<O: BallOracle + ?Sized> BallOracle for &O {
    fn ball_at(&self, r: usize) -> RootedGraph {
        (**self).ball_at(r)
    }

    fn finite_radius(&self) -> Option<usize> {
        (**self).finite_radius()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProximityResult {
    Equal,
    /// Balls agree at radius `r` and differ at `r + 1`.
    AgreeUpTo(usize),
    /// Balls agree at every radius up to the bound searched.
    Indistinguishable(usize),
}

impl ProximityResult {
    fn closeness(self) -> (ExtNat, u8) {
        match self {
            ProximityResult::Equal => (ExtNat::Infinite, 1),
            ProximityResult::Indistinguishable(r) => (ExtNat::from(r), 1),
            ProximityResult::AgreeUpTo(r) => (ExtNat::from(r), 0),
        }
    }

    /// Orders results from farthest to closest.
    pub fn cmp_closeness(&self, other: &Self) -> Ordering {
        self.closeness().cmp(&other.closeness())
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, ProximityResult::Indistinguishable(_))
    }
}

/// A distance value, or an upper bound when the search was inconclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhoValue<T> {
    Exact(T),
    AtMost(T),
}

impl<T> RhoValue<T> {
    pub fn value(&self) -> &T {
        match self {
            RhoValue::Exact(v) | RhoValue::AtMost(v) => v,
        }
    }

    pub fn exact(self) -> Option<T> {
        match self {
            RhoValue::Exact(v) => Some(v),
            RhoValue::AtMost(_) => None,
        }
    }
}

pub fn rho_value<T: Scalar>(p: ProximityResult) -> RhoValue<T> {
    match p {
        ProximityResult::Equal => RhoValue::Exact(T::zero()),
        ProximityResult::AgreeUpTo(r) => RhoValue::Exact(ExtNat::from(r).reciprocal_succ()),
        ProximityResult::Indistinguishable(r) => RhoValue::AtMost(ExtNat::from(r).reciprocal_succ()),
    }
}

fn agree<A: BallOracle + ?Sized, B: BallOracle + ?Sized>(a: &A, b: &B, r: usize) -> bool {
    is_rooted_isomorphic(&a.ball_at(r), &b.ball_at(r))
}

/// Largest `r` in `[lo, hi)` with agreement, given agreement at `lo` and disagreement at `hi`.
fn last_agreement<A: BallOracle + ?Sized, B: BallOracle + ?Sized>(a: &A, b: &B, mut lo: usize, mut hi: usize) -> usize {
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if agree(a, b, mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Compares two oracles. Pairs of finite graphs are always resolved exactly;
/// otherwise radii beyond `r_max` are not examined.
pub fn rho<A: BallOracle + ?Sized, B: BallOracle + ?Sized>(a: &A, b: &B, r_max: usize) -> ProximityResult {
    if let (Some(ra), Some(rb)) = (a.finite_radius(), b.finite_radius()) {
        let top = ra.max(rb);
        if agree(a, b, top) {
            return ProximityResult::Equal;
        }
        return ProximityResult::AgreeUpTo(last_agreement(a, b, 0, top));
    }
    if agree(a, b, r_max) {
        ProximityResult::Indistinguishable(r_max)
    } else {
        ProximityResult::AgreeUpTo(last_agreement(a, b, 0, r_max))
    }
}

/// The vertex `x` of `h` whose rooted component is closest to `target`,
/// together with that distance. Ties go to the smallest index.
pub fn nearest_root<A: BallOracle + ?Sized>(target: &A, h: &Graph, r_max: usize) -> Result<(usize, ProximityResult)> {
    if h.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut best: Option<(usize, ProximityResult)> = None;
    for x in 0..h.vertex_count() {
        let candidate = oracle_finite(h.connected_component(x)?);
        let p = rho(target, &candidate, r_max);
        if best.is_none_or(|(_, b)| p.cmp_closeness(&b) == Ordering::Greater) {
            best = Some((x, p));
        }
    }
    Ok(best.expect("graph is nonempty"))
}
