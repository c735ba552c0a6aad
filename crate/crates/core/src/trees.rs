//! Balls of the 3-regular tree, their laws, and the one-ended limit graph `S`.
//!
//! `T_k` is the radius-`k` ball of the 3-regular tree around its center `t`.
//! Along a path `u_1 … u_k t` from a deepest leaf to the center, the vertex
//! `u_i` sits at depth `k − i + 1` and has `3·2^(k−i)` vertices in its orbit.
//!
//! `S` has a spine `u_1 u_2 u_3 …` and, for every `j ≥ 2`, a complete binary
//! tree of depth `j − 2` hanging off `u_j`. It is the local picture of `T_k`
//! around `u_i` once `k` is large; `s_ball(i, r)` agrees with the radius-`r`
//! ball of `T_k` at `u_i` for every `k ≥ i + r`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::hash::Hash;

use crate::canon::Canonical;
use crate::error::{Error, Result};
use crate::graph::{Graph, RootedGraph};
use crate::law::{BallDistribution, FiniteSupportMeasure};
use crate::Scalar;

/// Number of vertices of `T_k`: `1` for `k = 0`, otherwise `3·2^k − 2`.
pub fn tree_ball_size(k: u32) -> u64 {
    if k == 0 {
        1
    } else {
        3 * (1u64 << k) - 2
    }
}

/// `T_k` rooted at its center. Vertices are numbered breadth-first, center first.
pub fn tree_ball(k: u32) -> RootedGraph {
    let n = tree_ball_size(k) as usize;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut next = 1;
    let mut frontier_start = 0;
    let mut frontier_end = 1;
    for depth in 0..k {
        let branching = if depth == 0 { 3 } else { 2 };
        for v in frontier_start..frontier_end {
            for _ in 0..branching {
                adj[v].push(next);
                adj[next].push(v);
                next += 1;
            }
        }
        frontier_start = frontier_end;
        frontier_end = next;
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    RootedGraph::new_unchecked(Graph::from_sorted_adjacency(adj), 0)
}

/// Index of `u_i` in [`tree_ball`]`(k)`, for `1 ≤ i ≤ k`. The vertices `u_k, …, u_1`
/// are the first vertices of depths `1, …, k`, which form a path from the center.
pub fn spine_vertex(k: u32, i: u32) -> Result<usize> {
    if i == 0 || i > k {
        return Err(Error::InvalidParameter(format!("spine index {i} outside 1..={k}")));
    }
    Ok((3 * (1u64 << (k - i)) - 2) as usize)
}

/// Mass of the class of `u_i` in the law of `T_k`: `3·2^(k−i) / (3·2^k − 2)`.
pub fn tree_class_mass<T: Scalar>(k: u32, i: u32) -> Result<T> {
    if i == 0 || i > k {
        return Err(Error::InvalidParameter(format!("spine index {i} outside 1..={k}")));
    }
    Ok(T::ratio(3 * (1u64 << (k - i)), tree_ball_size(k)))
}

/// Mass of the center class in the law of `T_k`: `1 / (3·2^k − 2)`.
pub fn tree_center_mass<T: Scalar>(k: u32) -> T {
    T::ratio(1, tree_ball_size(k))
}

/// Closed-form law of `T_k` for `k ≥ 1`.
pub fn tree_law_closed<T: Scalar>(k: u32) -> Result<FiniteSupportMeasure<T>> {
    if k == 0 {
        return Err(Error::InvalidParameter("the closed form needs k ≥ 1; T_0 is a single vertex".into()));
    }
    let t = tree_ball(k);
    let mut atoms = Vec::with_capacity(k as usize + 1);
    for i in 1..=k {
        let root = spine_vertex(k, i)?;
        atoms.push((RootedGraph::new_unchecked(t.graph().clone(), root), tree_class_mass(k, i)?));
    }
    atoms.push((t, tree_center_mass(k)));
    FiniteSupportMeasure::from_atoms(atoms)
}

/// Mass `2^(−i)` of the class `[S, u_i]` in the limit measure.
pub fn s_limit_mass<T: Scalar>(i: u32) -> Result<T> {
    if i == 0 || i > 63 {
        return Err(Error::InvalidParameter(format!("spine index {i} outside 1..=63")));
    }
    Ok(T::ratio(1, 1u64 << i))
}

/// Radius-`r` ball of a rooted graph given implicitly by a neighbor function.
pub(crate) fn implicit_ball<V, F>(root: V, r: usize, neighbors: F) -> RootedGraph
where
    V: Clone + Eq + Hash,
    F: Fn(&V) -> Vec<V>,
{
    let mut index: HashMap<V, usize> = HashMap::new();
    let mut vertices = vec![root.clone()];
    let mut dist = vec![0usize];
    index.insert(root, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        for w in neighbors(&vertices[u]) {
            let id = match index.get(&w) {
                Some(&id) => id,
                None if dist[u] < r => {
                    let id = vertices.len();
                    index.insert(w.clone(), id);
                    vertices.push(w);
                    dist.push(dist[u] + 1);
                    queue.push_back(id);
                    id
                }
                None => continue,
            };
            if u < id {
                edges.push((u, id));
            }
        }
    }
    let g = Graph::new(vertices.len(), edges).expect("implicit neighbor relation is simple and symmetric");
    RootedGraph::new_unchecked(g, 0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum SVertex {
    Spine(u64),
    /// Vertex of the binary tree hanging off `u_j`, at depth `depth` (0 is
    /// adjacent to `u_j`), number `index` within its level.
    Pendant { j: u64, depth: u64, index: u64 },
}

fn s_neighbors(v: &SVertex) -> Vec<SVertex> {
    let mut out = Vec::with_capacity(3);
    match *v {
        SVertex::Spine(j) => {
            if j >= 2 {
                out.push(SVertex::Spine(j - 1));
                out.push(SVertex::Pendant { j, depth: 0, index: 0 });
            }
            out.push(SVertex::Spine(j + 1));
        }
        SVertex::Pendant { j, depth, index } => {
            out.push(if depth == 0 {
                SVertex::Spine(j)
            } else {
                SVertex::Pendant { j, depth: depth - 1, index: index / 2 }
            });
            if depth < j - 2 {
                out.push(SVertex::Pendant { j, depth: depth + 1, index: 2 * index });
                out.push(SVertex::Pendant { j, depth: depth + 1, index: 2 * index + 1 });
            }
        }
    }
    out
}

/// Radius-`r` ball of `[S, u_i]`.
pub fn s_ball(i: u64, r: usize) -> Result<RootedGraph> {
    if i == 0 {
        return Err(Error::InvalidParameter("spine index must be at least 1".into()));
    }
    Ok(implicit_ball(SVertex::Spine(i), r, s_neighbors))
}

/// Radius-`r` ball of the 3-regular tree, built by the generic ball generator.
/// Used to cross-check [`tree_ball`].
pub fn tree3_ball_implicit(r: usize) -> RootedGraph {
    // vertices are addressed by the word of branch choices from the center
    implicit_ball(Vec::<u8>::new(), r, |word: &Vec<u8>| {
        let mut out = Vec::with_capacity(3);
        if let Some((_, parent)) = word.split_last() {
            out.push(parent.to_vec());
        }
        let choices: &[u8] = if word.is_empty() { &[0, 1, 2] } else { &[0, 1] };
        for &c in choices {
            let mut child = word.clone();
            child.push(c);
            out.push(child);
        }
        out
    })
}

/// Radius-`r` marginal of the limit measure `Σ_i 2^(−i) δ[S, u_i]`.
///
/// For `i ≥ r + 1` every vertex within distance `r − 1` of `u_i` has degree 3,
/// so all of those balls are the ball `T_r` and the tail `Σ_{i>r} 2^(−i) = 2^(−r)`
/// sits on a single class.
pub fn s_limit_pushforward<T: Scalar>(r: usize) -> Result<BallDistribution<T>> {
    if r >= 63 {
        return Err(Error::InvalidParameter(format!("radius {r} too large")));
    }
    let mut classes: BTreeMap<_, (RootedGraph, T)> = BTreeMap::new();
    for i in 1..=(r as u64 + 1) {
        let ball = s_ball(i, r)?;
        let mass = if i <= r as u64 { T::ratio(1, 1 << i) } else { T::ratio(1, 1 << r) };
        let key = ball.canonical_key();
        match classes.get_mut(&key) {
            Some((_, m)) => *m = m.clone() + mass,
            None => {
                classes.insert(key, (ball, mass));
            }
        }
    }
    BallDistribution::from_classes(r, classes)
}
