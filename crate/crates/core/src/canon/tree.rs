//! Exact encodings for trees.
//!
//! Rooted trees get the classical level-by-level canonical numbering: at each
//! depth, the distinct (mark, sorted child numbers) tuples are sorted and
//! numbered, so two subtrees at the same depth share a number exactly when they
//! are isomorphic. Serializing the tree depth-first with children in number
//! order yields a string that two rooted trees share iff they are isomorphic.

use std::collections::HashMap;

use crate::graph::Graph;

const ENTER: u8 = 1;
const EXIT: u8 = 0;

struct Bfs {
    order: Vec<usize>,
    parent: Vec<usize>,
    depth: Vec<usize>,
}

fn bfs_tree(g: &Graph, root: usize) -> Bfs {
    let n = g.vertex_count();
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0; n];
    order.push(root);
    parent[root] = root;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        i += 1;
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                depth[w] = depth[u] + 1;
                order.push(w);
            }
        }
    }
    debug_assert_eq!(order.len(), n, "tree must be connected");
    Bfs { order, parent, depth }
}

/// Parenthesis encoding of the tree rooted at `root`, with `marked` carrying
/// a mark bit. The caller guarantees `g` is a tree.
pub(crate) fn rooted_tree_encoding(g: &Graph, root: usize, marked: Option<usize>) -> Vec<u8> {
    let n = g.vertex_count();
    let Bfs { order, parent, depth } = bfs_tree(g, root);
    let mark = |v: usize| u8::from(marked == Some(v));

    let mut number = vec![0u32; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in order.iter().skip(1) {
        children[parent[v]].push(v);
    }

    // order is sorted by depth, so each level is a contiguous slice
    let mut level_end = order.len();
    while level_end > 0 {
        let d = depth[order[level_end - 1]];
        let level_start = order[..level_end].partition_point(|&v| depth[v] < d);
        let mut tuples: Vec<((u8, Vec<u32>), usize)> = order[level_start..level_end]
            .iter()
            .map(|&v| {
                let mut kids: Vec<u32> = children[v].iter().map(|&c| number[c]).collect();
                kids.sort_unstable();
                ((mark(v), kids), v)
            })
            .collect();
        tuples.sort_unstable();
        let mut next = 0u32;
        for i in 0..tuples.len() {
            if i > 0 && tuples[i].0 != tuples[i - 1].0 {
                next += 1;
            }
            number[tuples[i].1] = next;
        }
        level_end = level_start;
    }

    for kids in &mut children {
        kids.sort_by_key(|&c| number[c]);
    }
    let mut out = Vec::with_capacity(3 * n);
    let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
    out.push(ENTER);
    out.push(mark(root));
    while let Some(top) = stack.last_mut() {
        let (v, next_child) = *top;
        if next_child < children[v].len() {
            top.1 += 1;
            let c = children[v][next_child];
            out.push(ENTER);
            out.push(mark(c));
            stack.push((c, 0));
        } else {
            out.push(EXIT);
            stack.pop();
        }
    }
    out
}

/// Assigns every vertex of a tree a class number such that two vertices share
/// a number iff the tree rooted at one is isomorphic to the tree rooted at the
/// other. Numbers are only meaningful within one call.
pub(crate) fn rooted_classes(g: &Graph) -> Vec<u32> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let Bfs { order, parent, .. } = bfs_tree(g, 0);
    let mut interner: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut intern = |mut ids: Vec<u32>| -> u32 {
        ids.sort_unstable();
        let next = interner.len() as u32;
        *interner.entry(ids).or_insert(next)
    };
    let parent = &parent;
    let children = |v: usize| g.neighbors(v).iter().copied().filter(move |&w| parent[w] == v && w != v);

    // down[v]: subtree below v; up[v]: the rest of the tree seen from v, rooted at parent(v)
    let mut down = vec![0u32; n];
    for &v in order.iter().rev() {
        down[v] = intern(children(v).map(|c| down[c]).collect());
    }
    let mut up = vec![u32::MAX; n];
    let mut class = vec![0u32; n];
    for &v in &order {
        let mut around: Vec<u32> = children(v).map(|c| down[c]).collect();
        if v != 0 {
            around.push(up[v]);
        }
        class[v] = intern(around.clone());
        for c in children(v) {
            let mut rest = around.clone();
            let at = rest.iter().position(|&x| x == down[c]).expect("child id present");
            rest.swap_remove(at);
            up[c] = intern(rest);
        }
    }
    class
}
