//! Canonical labeling by color refinement and individualization.
//!
//! The search tree is the usual one: refine to an equitable ordered partition,
//! pick the first smallest non-singleton cell, individualize each of its
//! vertices in turn and recurse. Every node carries the trace of its
//! refinement; leaves are ordered by (trace sequence, adjacency certificate)
//! and the minimum leaf defines the canonical labeling. Two kinds of pruning
//! keep the search small: a node whose trace prefix exceeds the best leaf's
//! is dropped, and children lying in one orbit of the automorphisms found so
//! far (restricted to those fixing the current individualized vertices) are
//! explored once.

use std::collections::VecDeque;

use crate::graph::Graph;

const SPLITTER_END: u32 = u32::MAX;

#[derive(Clone)]
struct Partition {
    /// position -> vertex
    lab: Vec<usize>,
    /// vertex -> position
    pos: Vec<usize>,
    /// vertex -> start position of its cell
    cell_of: Vec<usize>,
    /// cell start -> cell end (exclusive); meaningful at cell starts only
    cell_end: Vec<usize>,
    cells: usize,
}

impl Partition {
    fn from_colors(colors: &[u8]) -> Self {
        let n = colors.len();
        let mut lab: Vec<usize> = (0..n).collect();
        lab.sort_by_key(|&v| (colors[v], v));
        let mut pos = vec![0; n];
        let mut cell_of = vec![0; n];
        let mut cell_end = vec![0; n];
        let mut cells = 0;
        let mut start = 0;
        for i in 0..n {
            pos[lab[i]] = i;
            if i > 0 && colors[lab[i]] != colors[lab[i - 1]] {
                cell_end[start] = i;
                start = i;
            }
            if i == start {
                cells += 1;
            }
            cell_of[lab[i]] = start;
        }
        if n > 0 {
            cell_end[start] = n;
        }
        Partition { lab, pos, cell_of, cell_end, cells }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.lab.len() {
            out.push(s);
            s = self.cell_end[s];
        }
        out
    }

    /// First non-singleton cell of minimum size.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.lab.len() {
            let size = self.cell_end[s] - s;
            if size > 1 && best.is_none_or(|(_, b)| size < b) {
                best = Some((s, size));
            }
            s = self.cell_end[s];
        }
        best.map(|(s, _)| s)
    }

    /// Moves `v` to the front of its cell as a new singleton cell. Returns its position.
    fn individualize(&mut self, v: usize) -> usize {
        let start = self.cell_of[v];
        let end = self.cell_end[start];
        debug_assert!(end - start > 1);
        let p = self.pos[v];
        let u = self.lab[start];
        self.lab.swap(start, p);
        self.pos[u] = p;
        self.pos[v] = start;
        self.cell_end[start] = start + 1;
        self.cell_end[start + 1] = end;
        for i in start + 1..end {
            self.cell_of[self.lab[i]] = start + 1;
        }
        self.cells += 1;
        start
    }

    /// Refines to the coarsest equitable partition finer than the current one,
    /// starting from the given splitter cells. Appends an isomorphism-invariant
    /// description of every split to `trace`.
    fn refine(&mut self, g: &Graph, initial: &[usize], trace: &mut Vec<u32>) {
        let n = self.lab.len();
        let mut queued = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in initial {
            if !queued[s] {
                queued[s] = true;
                queue.push_back(s);
            }
        }
        let mut count = vec![0u32; n];
        let mut touched_cells: Vec<usize> = Vec::new();
        let mut touched_vertices: Vec<usize> = Vec::new();
        while let Some(s) = queue.pop_front() {
            queued[s] = false;
            if self.is_discrete() {
                break;
            }
            let end = self.cell_end[s];
            for i in s..end {
                for &w in g.neighbors(self.lab[i]) {
                    if count[w] == 0 {
                        touched_vertices.push(w);
                        touched_cells.push(self.cell_of[w]);
                    }
                    count[w] += 1;
                }
            }
            touched_cells.sort_unstable();
            touched_cells.dedup();
            trace.push(s as u32);
            for &c in &touched_cells {
                let c_end = self.cell_end[c];
                if c_end - c == 1 {
                    continue;
                }
                let first = count[self.lab[c]];
                if self.lab[c..c_end].iter().all(|&v| count[v] == first) {
                    continue;
                }
                self.lab[c..c_end].sort_by_key(|&v| count[v]);
                trace.push(c as u32);
                let mut frag = c;
                for i in c..c_end {
                    let v = self.lab[i];
                    self.pos[v] = i;
                    if i > c && count[v] != count[self.lab[i - 1]] {
                        self.cell_end[frag] = i;
                        trace.push(count[self.lab[i - 1]]);
                        trace.push((i - frag) as u32);
                        frag = i;
                        self.cells += 1;
                    }
                    self.cell_of[v] = frag;
                }
                self.cell_end[frag] = c_end;
                trace.push(count[self.lab[c_end - 1]]);
                trace.push((c_end - frag) as u32);
                let mut f = c;
                while f < c_end {
                    if !queued[f] {
                        queued[f] = true;
                        queue.push_back(f);
                    }
                    f = self.cell_end[f];
                }
            }
            trace.push(SPLITTER_END);
            for &w in &touched_vertices {
                count[w] = 0;
            }
            touched_vertices.clear();
            touched_cells.clear();
        }
    }
}

/// Result of canonical labeling.
pub(crate) struct CanonicalForm {
    /// Colors in canonical order followed by adjacency rows in canonical positions.
    pub certificate: Vec<u32>,
}

struct Leaf {
    traces: Vec<Vec<u32>>,
    certificate: Vec<u32>,
    labeling: Vec<usize>,
    path: Vec<usize>,
}

struct Search<'g> {
    graph: &'g Graph,
    colors: &'g [u8],
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn certificate(&self, part: &Partition) -> Vec<u32> {
        let n = part.lab.len();
        let mut cert = Vec::with_capacity(n + 2 * self.graph.edge_count() + n);
        cert.extend(part.lab.iter().map(|&v| u32::from(self.colors[v])));
        let mut row = Vec::new();
        for &v in &part.lab {
            row.clear();
            row.extend(self.graph.neighbors(v).iter().map(|&w| part.pos[w] as u32));
            row.sort_unstable();
            cert.push(row.len() as u32);
            cert.extend_from_slice(&row);
        }
        cert
    }

    /// Compares the current trace prefix against the best leaf's.
    fn prefix_order(&self, traces: &[Vec<u32>]) -> std::cmp::Ordering {
        let Some(best) = &self.best else {
            return std::cmp::Ordering::Less;
        };
        for (mine, theirs) in traces.iter().zip(&best.traces) {
            match mine.cmp(theirs) {
                std::cmp::Ordering::Equal => continue,
                other => return other,
            }
        }
        std::cmp::Ordering::Equal
    }

    fn same_orbit_as_explored(&self, w: usize, explored: &[usize], fixed: &[usize]) -> bool {
        if explored.is_empty() || self.automorphisms.is_empty() {
            return false;
        }
        let n = self.graph.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if fixed.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            any = true;
            for (v, &image) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, image));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == root)
    }

    fn visit_leaf(&mut self, part: Partition, traces: &[Vec<u32>], path: &[usize]) -> Option<usize> {
        let certificate = self.certificate(&part);
        let order = match &self.best {
            None => std::cmp::Ordering::Less,
            Some(best) => traces
                .cmp(best.traces.as_slice())
                .then_with(|| certificate.cmp(&best.certificate)),
        };
        match order {
            std::cmp::Ordering::Less => {
                self.best = Some(Leaf {
                    traces: traces.to_vec(),
                    certificate,
                    labeling: part.lab,
                    path: path.to_vec(),
                });
                None
            }
            std::cmp::Ordering::Equal => {
                // equal certificates: the two labelings differ by an automorphism
                let best = self.best.as_ref().expect("equal leaf implies a best leaf");
                let mut gamma = vec![0; part.lab.len()];
                for (i, &v) in best.labeling.iter().enumerate() {
                    gamma[v] = part.lab[i];
                }
                let common = best.path.iter().zip(path).take_while(|(a, b)| a == b).count();
                self.automorphisms.push(gamma);
                Some(common)
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    /// Returns `Some(depth)` when the search should unwind to the node at `depth`.
    fn explore(&mut self, part: Partition, traces: &mut Vec<Vec<u32>>, path: &mut Vec<usize>) -> Option<usize> {
        let depth = path.len();
        if self.prefix_order(traces) == std::cmp::Ordering::Greater {
            return None;
        }
        let Some(target) = part.target_cell() else {
            return self.visit_leaf(part, traces, path);
        };
        let mut candidates: Vec<usize> = part.lab[target..part.cell_end[target]].to_vec();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for w in candidates {
            if self.same_orbit_as_explored(w, &explored, path) {
                continue;
            }
            explored.push(w);
            let mut child = part.clone();
            let start = child.individualize(w);
            let mut trace = vec![start as u32];
            child.refine(self.graph, &[start], &mut trace);
            traces.push(trace);
            path.push(w);
            let jump = self.explore(child, traces, path);
            traces.pop();
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }
}

/// Canonical labeling of a vertex-colored graph. Isomorphisms are required to
/// preserve colors.
pub(crate) fn canonical_form(graph: &Graph, colors: &[u8]) -> CanonicalForm {
    assert_eq!(colors.len(), graph.vertex_count());
    let mut part = Partition::from_colors(colors);
    let mut trace = Vec::new();
    let starts = part.cell_starts();
    part.refine(graph, &starts, &mut trace);
    let mut search = Search { graph, colors, best: None, automorphisms: Vec::new() };
    let mut traces = vec![trace];
    let mut path = Vec::new();
    search.explore(part, &mut traces, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    CanonicalForm { certificate: best.certificate }
}
