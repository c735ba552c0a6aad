use std::fmt;
use std::str::FromStr;

use super::BallOracle;
use crate::error::{Error, Result};
use crate::graph::{Graph, RootedGraph};
use crate::trees::{s_ball, tree_ball};

/// The built-in ball oracles, plus finite rooted graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Oracle {
    Finite { graph: RootedGraph, radius: usize },
    BiInfinitePath,
    /// One-ended path rooted `end_distance` steps away from its end.
    SemiInfinitePath { end_distance: u64 },
    Cycle(usize),
    /// The 3-regular tree.
    Tree3,
    /// Radius-`k` ball of the 3-regular tree at its center.
    Tree3Ball(u32),
    /// The graph `S` rooted at the spine vertex `u_i`.
    SGraph(u64),
}

pub fn oracle_finite(graph: RootedGraph) -> Oracle {
    let radius = graph.eccentricity();
    Oracle::Finite { graph, radius }
}

pub fn oracle_bi_infinite_path() -> Oracle {
    Oracle::BiInfinitePath
}

pub fn oracle_semi_infinite_path(end_distance: u64) -> Oracle {
    Oracle::SemiInfinitePath { end_distance }
}

pub fn oracle_cycle(n: usize) -> Result<Oracle> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle length {n} is below 3")));
    }
    Ok(Oracle::Cycle(n))
}

pub fn oracle_tree3() -> Oracle {
    Oracle::Tree3
}

pub fn oracle_tree3_ball(k: u32) -> Oracle {
    Oracle::Tree3Ball(k)
}

pub fn oracle_s_graph(i: u64) -> Result<Oracle> {
    if i == 0 {
        return Err(Error::InvalidParameter("s-graph index must be at least 1".into()));
    }
    Ok(Oracle::SGraph(i))
}

/// The path `P_n` rooted at vertex index `root`. The oracle name `path:<n>:<i>`
/// instead counts positions from 1.
pub fn oracle_path(n: usize, root: usize) -> Result<Oracle> {
    if n == 0 {
        return Err(Error::InvalidParameter("a path needs at least one vertex".into()));
    }
    Ok(oracle_finite(RootedGraph::new(Graph::path(n), root)?))
}

/// Path on `left + right + 1` vertices rooted at index `left`.
fn segment(left: usize, right: usize) -> RootedGraph {
    RootedGraph::new_unchecked(Graph::path(left + right + 1), left)
}

fn tree_radius(r: usize) -> u32 {
    u32::try_from(r).ok().filter(|&r| r < 40).expect("tree ball radius out of range")
}

impl BallOracle for Oracle {
    fn ball_at(&self, r: usize) -> RootedGraph {
        match self {
            Oracle::Finite { graph, radius } => {
                if r >= *radius {
                    graph.clone()
                } else {
                    graph.ball(r)
                }
            }
            Oracle::BiInfinitePath => segment(r, r),
            Oracle::SemiInfinitePath { end_distance } => {
                segment(usize::try_from(*end_distance).map_or(r, |d| d.min(r)), r)
            }
            Oracle::Cycle(n) => {
                let half = n / 2;
                if r >= half {
                    RootedGraph::new_unchecked(Graph::cycle(*n).expect("n ≥ 3"), 0)
                } else {
                    segment(r, r)
                }
            }
            Oracle::Tree3 => tree_ball(tree_radius(r)),
            Oracle::Tree3Ball(k) => tree_ball(tree_radius(r.min(*k as usize))),
            Oracle::SGraph(i) => s_ball(*i, r).expect("index checked at construction"),
        }
    }

    fn finite_radius(&self) -> Option<usize> {
        match self {
            Oracle::Finite { radius, .. } => Some(*radius),
            Oracle::Cycle(n) => Some(n / 2),
            Oracle::Tree3Ball(k) => Some(*k as usize),
            _ => None,
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Oracle::Finite { graph, .. } => {
                write!(f, "finite({} vertices, root {})", graph.vertex_count(), graph.root())
            }
            Oracle::BiInfinitePath => f.write_str("p-infinity"),
            Oracle::SemiInfinitePath { end_distance } => write!(f, "semi:{end_distance}"),
            Oracle::Cycle(n) => write!(f, "cycle:{n}"),
            Oracle::Tree3 => f.write_str("tree3"),
            Oracle::Tree3Ball(k) => write!(f, "tree3-ball:{k}"),
            Oracle::SGraph(i) => write!(f, "s-graph:{i}"),
        }
    }
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("unknown oracle `{s}`"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        let small = |t: &str| num(t).and_then(|v| usize::try_from(v).map_err(|_| bad()));
        match parts.as_slice() {
            ["p-infinity"] => Ok(Oracle::BiInfinitePath),
            ["tree3"] => Ok(Oracle::Tree3),
            ["semi", d] => Ok(oracle_semi_infinite_path(num(d)?)),
            ["cycle", n] => oracle_cycle(small(n)?),
            ["tree3-ball", k] => {
                let k = u32::try_from(num(k)?).ok().filter(|&k| k < 24).ok_or_else(bad)?;
                Ok(Oracle::Tree3Ball(k))
            }
            ["s-graph", i] => oracle_s_graph(num(i)?),
            // spine positions u_1 … u_n are numbered from 1
            ["path", n, i] => match small(i)? {
                0 => Err(bad()),
                i => oracle_path(small(n)?, i - 1),
            },
            _ => Err(bad()),
        }
    }
}
