//! Canonical keys for rooted, birooted and unrooted graphs.
//!
//! A [`CanonKey`] is a byte string with the property that two graphs of the
//! same kind receive equal keys iff a root-preserving isomorphism exists.
//! Trees use an exact parenthesis encoding; everything else goes through
//! [`refine::canonical_form`]. Whether a graph is a tree is an isomorphism
//! invariant, so mixing the two schemes cannot merge or split classes.

mod refine;
mod tree;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{BirootedGraph, Graph, RootedGraph};

const KIND_ROOTED: u8 = 0;
const KIND_BIROOTED: u8 = 1;
const KIND_UNROOTED: u8 = 2;
const SCHEME_TREE: u8 = 0;
const SCHEME_GENERAL: u8 = 1;

const COLOR_PLAIN: u8 = 0;
const COLOR_ROOT1: u8 = 1;
const COLOR_ROOT2: u8 = 2;
const COLOR_BOTH: u8 = 3;

/// Canonical byte string of an isomorphism class. Ordered by bytes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonKey(Vec<u8>);

impl CanonKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        use fmt::Write;
        self.0.iter().fold(String::with_capacity(2 * self.0.len()), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    pub fn from_hex(hex: &str) -> Option<CanonKey> {
        if !hex.len().is_multiple_of(2) {
            return None;
        }
        (0..hex.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(hex.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonKey)
    }
}

impl fmt::Display for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

fn header(kind: u8, scheme: u8, n: usize) -> Vec<u8> {
    let mut bytes = vec![kind, scheme];
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    bytes
}

fn general_key(kind: u8, g: &Graph, colors: &[u8]) -> CanonKey {
    let form = refine::canonical_form(g, colors);
    let mut bytes = header(kind, SCHEME_GENERAL, g.vertex_count());
    bytes.reserve(4 * form.certificate.len());
    for x in form.certificate {
        bytes.extend_from_slice(&x.to_be_bytes());
    }
    CanonKey(bytes)
}

fn tree_key(kind: u8, g: &Graph, root: usize, marked: Option<usize>) -> CanonKey {
    let mut bytes = header(kind, SCHEME_TREE, g.vertex_count());
    bytes.extend(tree::rooted_tree_encoding(g, root, marked));
    CanonKey(bytes)
}

fn rooted_key_raw(g: &Graph, root: usize) -> CanonKey {
    if g.edge_count() + 1 == g.vertex_count() {
        tree_key(KIND_ROOTED, g, root, None)
    } else {
        let mut colors = vec![COLOR_PLAIN; g.vertex_count()];
        colors[root] = COLOR_ROOT1;
        general_key(KIND_ROOTED, g, &colors)
    }
}

/// Types with a canonical key.
pub trait Canonical {
    fn canonical_key(&self) -> CanonKey;
}

impl Canonical for RootedGraph {
    fn canonical_key(&self) -> CanonKey {
        rooted_key_raw(self.graph(), self.root())
    }
}

impl Canonical for BirootedGraph {
    fn canonical_key(&self) -> CanonKey {
        let g = self.graph();
        let (r1, r2) = self.roots();
        if g.edge_count() + 1 == g.vertex_count() {
            tree_key(KIND_BIROOTED, g, r1, Some(r2))
        } else {
            let mut colors = vec![COLOR_PLAIN; g.vertex_count()];
            if r1 == r2 {
                colors[r1] = COLOR_BOTH;
            } else {
                colors[r1] = COLOR_ROOT1;
                colors[r2] = COLOR_ROOT2;
            }
            general_key(KIND_BIROOTED, g, &colors)
        }
    }
}

/// Unrooted graphs, connected or not.
impl Canonical for Graph {
    fn canonical_key(&self) -> CanonKey {
        general_key(KIND_UNROOTED, self, &vec![COLOR_PLAIN; self.vertex_count()])
    }
}

pub fn canonical_key<G: Canonical + ?Sized>(g: &G) -> CanonKey {
    g.canonical_key()
}

/// True iff some isomorphism maps `a`'s root to `b`'s.
pub fn is_rooted_isomorphic(a: &RootedGraph, b: &RootedGraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.graph().edge_count() == b.graph().edge_count()
        && a.degree_at_root() == b.degree_at_root()
        && a.canonical_key() == b.canonical_key()
}

/// One isomorphism class of rooted connected components of a graph.
#[derive(Debug, Clone)]
pub struct ComponentClass {
    pub key: CanonKey,
    /// The component of the smallest member vertex, rooted there.
    pub representative: RootedGraph,
    /// Vertices (of the whole graph) whose rooted component lies in this class, ascending.
    pub vertices: Vec<usize>,
}

/// Groups the vertices of `g` by the class of their rooted connected component.
/// Classes are returned in key order.
pub fn component_classes(g: &Graph) -> Vec<ComponentClass> {
    // identical labeled components (e.g. from replicate) are classified once
    let mut cache: HashMap<Graph, Vec<(CanonKey, Vec<usize>)>> = HashMap::new();
    let mut by_key: BTreeMap<CanonKey, ComponentClass> = BTreeMap::new();
    for comp in g.components() {
        let sub = g.component_graph(&comp);
        let local = cache.entry(sub).or_insert_with_key(classify_connected);
        for (key, members) in local.iter() {
            let global: Vec<usize> = members.iter().map(|&i| comp[i]).collect();
            match by_key.get_mut(key) {
                Some(class) => class.vertices.extend(global),
                None => {
                    let sub = g.component_graph(&comp);
                    let representative = RootedGraph::new_unchecked(sub, members[0]);
                    by_key.insert(key.clone(), ComponentClass { key: key.clone(), representative, vertices: global });
                }
            }
        }
    }
    by_key
        .into_values()
        .map(|mut c| {
            c.vertices.sort_unstable();
            c
        })
        .collect()
}

/// Classes of roots of a connected graph, as (key, ascending local vertices).
fn classify_connected(sub: &Graph) -> Vec<(CanonKey, Vec<usize>)> {
    let n = sub.vertex_count();
    let mut groups: BTreeMap<CanonKey, Vec<usize>> = BTreeMap::new();
    if sub.edge_count() + 1 == n {
        let classes = tree::rooted_classes(sub);
        let mut seen: HashMap<u32, CanonKey> = HashMap::new();
        for (v, &class) in classes.iter().enumerate() {
            let key = seen
                .entry(class)
                .or_insert_with(|| tree_key(KIND_ROOTED, sub, v, None))
                .clone();
            groups.entry(key).or_default().push(v);
        }
    } else {
        for v in 0..n {
            groups.entry(rooted_key_raw(sub, v)).or_default().push(v);
        }
    }
    groups.into_iter().collect()
}

/// Number of vertices `x` with `[G_x, x] = [G_o, o]`, i.e. the size of `o`'s orbit.
pub fn orbit_size(g: &Graph, o: usize) -> Result<usize> {
    g.check_vertex(o)?;
    component_classes(g)
        .into_iter()
        .find(|c| c.vertices.binary_search(&o).is_ok())
        .map(|c| c.vertices.len())
        .ok_or(Error::VertexOutOfRange { vertex: o, vertex_count: g.vertex_count() })
}
