//! Graph corpora and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use graphlaw::{Canonical, CanonKey, Graph, RootedGraph};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph_from_bits(n: usize, bits: u64) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges = pairs.enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, e)| e);
    Graph::new(n, edges).unwrap()
}

/// One graph per isomorphism class on 1..=max_n vertices.
pub fn all_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let mut seen = BTreeSet::new();
        for bits in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_bits(n, bits);
            if seen.insert(g.canonical_key()) {
                out.push(g);
            }
        }
    }
    out
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// A random connected graph: a random spanning tree plus random extra edges.
pub fn random_connected(rng: &mut impl Rng, n: usize, extra: f64) -> Graph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(extra) {
                edges.insert((u, v));
            }
        }
    }
    let perm = random_permutation(rng, n);
    Graph::new(n, edges).unwrap().relabel(&perm).unwrap()
}

pub fn random_rooted(rng: &mut impl Rng, max_n: usize) -> RootedGraph {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.0..0.5);
    let g = random_connected(rng, n, p);
    let root = rng.gen_range(0..n);
    RootedGraph::new(g, root).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        p.swap(i, rng.gen_range(0..=i));
    }
    p
}

/// At least `count` pairwise non-isomorphic connected graphs on 1..=max_n vertices.
pub fn connected_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Graph> {
    let mut r = rng(seed);
    let mut seen: BTreeSet<CanonKey> = BTreeSet::new();
    let mut out = Vec::new();
    // every connected graph on up to 5 vertices, then random larger ones
    for g in all_graphs(5.min(max_n)) {
        if g.is_connected() && seen.insert(g.canonical_key()) {
            out.push(g);
        }
    }
    while out.len() < count {
        let n = r.gen_range(6.min(max_n)..=max_n);
        let p = r.gen_range(0.0..0.7);
        let g = random_connected(&mut r, n, p);
        if seen.insert(g.canonical_key()) {
            out.push(g);
        }
    }
    out
}

/// Backtracking search for an isomorphism `g → h` that maps each `fixed.0` to `fixed.1`.
pub fn find_isomorphism(g: &Graph, h: &Graph, fixed: &[(usize, usize)]) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n != h.vertex_count() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for &(a, b) in fixed {
        if map[a] != usize::MAX && map[a] != b {
            return None;
        }
        if map[a] == usize::MAX && used[b] {
            return None;
        }
        map[a] = b;
        used[b] = true;
    }
    for &(a, _) in fixed {
        for &(c, _) in fixed {
            if g.has_edge(a, c) != h.has_edge(map[a], map[c]) {
                return None;
            }
        }
    }
    let order: Vec<usize> = (0..n).filter(|&v| map[v] == usize::MAX).collect();
    fn extend(g: &Graph, h: &Graph, order: &[usize], map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let Some((&v, rest)) = order.split_first() else {
            return true;
        };
        for w in 0..h.vertex_count() {
            if used[w] || g.degree(v) != h.degree(w) {
                continue;
            }
            let consistent = (0..g.vertex_count())
                .filter(|&u| map[u] != usize::MAX)
                .all(|u| g.has_edge(u, v) == h.has_edge(map[u], w));
            if consistent {
                map[v] = w;
                used[w] = true;
                if extend(g, h, rest, map, used) {
                    return true;
                }
                map[v] = usize::MAX;
                used[w] = false;
            }
        }
        false
    }
    extend(g, h, &order, &mut map, &mut used).then_some(map)
}

pub fn brute_rooted_iso(a: &RootedGraph, b: &RootedGraph) -> bool {
    find_isomorphism(a.graph(), b.graph(), &[(a.root(), b.root())]).is_some()
}

/// Vertex-transitivity by searching for automorphisms `0 ↦ v`.
pub fn brute_vertex_transitive(g: &Graph) -> bool {
    g.is_connected() && (0..g.vertex_count()).all(|v| find_isomorphism(g, g, &[(0, v)]).is_some())
}

/// Distance between finite rooted graphs from balls compared by brute force.
/// Returns `None` for isomorphic graphs and `Some(r)` for agreement up to `r`.
pub fn brute_agreement(a: &RootedGraph, b: &RootedGraph) -> Option<usize> {
    if brute_rooted_iso(a, b) {
        return None;
    }
    (0..).find(|&r| !brute_rooted_iso(&a.ball(r + 1), &b.ball(r + 1)))
}
