//! Finite simple graphs and their rooted variants.
//!
//! Graphs are immutable. Every operation that produces a subgraph relabels the
//! surviving vertices `0..k` in ascending order of their original indices.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::extnat::ExtNat;

/// An undirected simple graph on vertices `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph, rejecting loops, repeated edges and out-of-range endpoints.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex: w, vertex_count });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
            edge_count += list.len();
        }
        Ok(Graph { adj, edge_count: edge_count / 2 })
    }

    /// Adjacency lists must already be sorted, symmetric and loop-free.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        debug_assert!(adj.iter().enumerate().all(|(u, l)| {
            l.windows(2).all(|w| w[0] < w[1]) && l.iter().all(|&v| v != u && adj[v].binary_search(&u).is_ok())
        }));
        Graph { adj, edge_count }
    }

    pub fn empty() -> Self {
        Graph::default()
    }

    /// `n` isolated vertices.
    pub fn edgeless(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edge_count: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n).map(|u| (0..n).filter(|&v| v != u).collect()).collect();
        Graph::from_sorted_adjacency(adj)
    }

    /// The path `0 − 1 − … − (n−1)`; `path(0)` is empty.
    pub fn path(n: usize) -> Self {
        let adj = (0..n)
            .map(|i| {
                let mut l = Vec::with_capacity(2);
                if i > 0 {
                    l.push(i - 1);
                }
                if i + 1 < n {
                    l.push(i + 1);
                }
                l
            })
            .collect();
        Graph::from_sorted_adjacency(adj)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        Graph::new(a + b, edges).expect("complete bipartite edges are valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, vertex_count: self.vertex_count() })
        }
    }

    /// Fails if some vertex has degree above `bound`.
    pub fn check_degree_bound(&self, bound: usize) -> Result<()> {
        match self.adj.iter().enumerate().find(|(_, l)| l.len() > bound) {
            Some((vertex, l)) => Err(Error::DegreeBound { vertex, degree: l.len(), bound }),
            None => Ok(()),
        }
    }

    /// The subgraph induced by `vertices` (duplicates ignored).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            self.check_vertex(v)?;
        }
        Ok(self.induced_sorted(&keep))
    }

    /// `keep` must be sorted, deduplicated and in range.
    fn induced_sorted(&self, keep: &[usize]) -> Graph {
        const ABSENT: usize = usize::MAX;
        let mut index = vec![ABSENT; self.vertex_count()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| self.adj[v].iter().map(|&w| index[w]).filter(|&w| w != ABSENT).collect())
            .collect();
        Graph::from_sorted_adjacency(adj)
    }

    /// Shortest-path distances from `o`; unreachable vertices are at infinity.
    pub fn distances_from(&self, o: usize) -> Result<Vec<ExtNat>> {
        self.check_vertex(o)?;
        Ok(self
            .bfs(o, usize::MAX)
            .into_iter()
            .map(|d| if d == usize::MAX { ExtNat::Infinite } else { ExtNat::Finite(d as u64) })
            .collect())
    }

    /// BFS distances up to `limit`; farther or unreachable vertices get `usize::MAX`.
    pub(crate) fn bfs(&self, o: usize, limit: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        let mut queue = VecDeque::from([o]);
        dist[o] = 0;
        while let Some(u) = queue.pop_front() {
            if dist[u] == limit {
                continue;
            }
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The closed ball `B(o, r)` rooted at `o`.
    pub fn ball(&self, o: usize, r: usize) -> Result<RootedGraph> {
        self.check_vertex(o)?;
        Ok(self.ball_unchecked(o, r))
    }

    pub(crate) fn ball_unchecked(&self, o: usize, r: usize) -> RootedGraph {
        let dist = self.bfs(o, r);
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&v| dist[v] != usize::MAX).collect();
        let root = keep.binary_search(&o).expect("root is in its own ball");
        RootedGraph { graph: self.induced_sorted(&keep), root }
    }

    /// The connected component containing `x`, rooted at `x`.
    pub fn connected_component(&self, x: usize) -> Result<RootedGraph> {
        self.ball(x, usize::MAX)
    }

    /// Vertex sets of the connected components, each ascending, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for s in 0..self.vertex_count() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on a sorted component vertex list.
    pub(crate) fn component_graph(&self, comp: &[usize]) -> Graph {
        self.induced_sorted(comp)
    }

    /// True for nonempty connected graphs.
    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.bfs(0, usize::MAX).iter().all(|&d| d != usize::MAX)
    }

    pub fn is_tree(&self) -> bool {
        self.is_connected() && self.edge_count + 1 == self.vertex_count()
    }

    /// `self + other`, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|l| l.iter().map(|&v| v + shift).collect()));
        Graph { adj, edge_count: self.edge_count + other.edge_count }
    }

    /// `m` disjoint copies; `replicate(0)` is the graph with no vertices.
    pub fn replicate(&self, m: usize) -> Graph {
        let n = self.vertex_count();
        let mut adj = Vec::with_capacity(n * m);
        for c in 0..m {
            adj.extend(self.adj.iter().map(|l| l.iter().map(|&v| v + c * n).collect()));
        }
        Graph { adj, edge_count: self.edge_count * m }
    }

    /// The image of `self` under the vertex map `v ↦ perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidParameter("relabeling is not a permutation".into()));
        }
        Graph::new(n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

/// A connected graph with a distinguished root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootedGraph {
    graph: Graph,
    root: usize,
}

impl RootedGraph {
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        graph.check_vertex(root)?;
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(RootedGraph { graph, root })
    }

    pub(crate) fn new_unchecked(graph: Graph, root: usize) -> Self {
        debug_assert!(root < graph.vertex_count() && graph.is_connected());
        RootedGraph { graph, root }
    }

    /// The one-vertex rooted graph.
    pub fn point() -> Self {
        RootedGraph { graph: Graph::edgeless(1), root: 0 }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn degree_at_root(&self) -> usize {
        self.graph.degree(self.root)
    }

    pub fn eccentricity(&self) -> usize {
        self.graph.bfs(self.root, usize::MAX).into_iter().max().unwrap_or(0)
    }

    pub fn ball(&self, r: usize) -> RootedGraph {
        self.graph.ball_unchecked(self.root, r)
    }

    pub fn check_degree_bound(&self, bound: usize) -> Result<()> {
        self.graph.check_degree_bound(bound)
    }

    pub fn relabel(&self, perm: &[usize]) -> Result<RootedGraph> {
        let graph = self.graph.relabel(perm)?;
        Ok(RootedGraph { graph, root: perm[self.root] })
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }
}

/// A connected graph with an ordered pair of roots, possibly equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BirootedGraph {
    graph: Graph,
    root1: usize,
    root2: usize,
}

impl BirootedGraph {
    pub fn new(graph: Graph, root1: usize, root2: usize) -> Result<Self> {
        graph.check_vertex(root1)?;
        graph.check_vertex(root2)?;
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(BirootedGraph { graph, root1, root2 })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn roots(&self) -> (usize, usize) {
        (self.root1, self.root2)
    }
}

/// Upper bound on the number of vertices of a radius-`r` rooted graph with
/// maximum degree `max_degree`: `1 + M·Σ_{i=1..r} (M−1)^{i−1}`.
pub fn max_ball_size(max_degree: u64, r: u32) -> Result<u128> {
    if max_degree == 0 {
        return Err(Error::InvalidParameter("degree bound must be positive".into()));
    }
    let m = max_degree as u128;
    let overflow = || Error::InvalidParameter("ball size bound overflows u128".into());
    let mut total: u128 = 1;
    let mut layer: u128 = m;
    for _ in 0..r {
        total = total.checked_add(layer).ok_or_else(overflow)?;
        layer = layer.checked_mul(m - 1).ok_or_else(overflow)?;
    }
    Ok(total)
}
