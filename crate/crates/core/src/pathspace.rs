//! Rooted paths as points `(x, y)` with `x ≤ y` in the extended naturals.
//!
//! A rooted path whose root is `x` steps from one end and `y` from the other
//! maps to `(min, max)`; one-ended paths have `y = ∞`, the line is `(∞, ∞)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, RootedGraph};
use crate::law::FiniteSupportMeasure;
use crate::metric::{oracle_finite, BallOracle, Oracle};
use crate::{ExtNat, Scalar};

pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("a path needs at least one vertex".into()));
    }
    Ok(Graph::path(n))
}

/// Closed-form law of the path on `n` vertices. With `u_1 … u_n` the path,
/// `n = 2k` puts `1/k` on each of `u_1 … u_k`, and `n = 2k + 1` puts
/// `2/(2k+1)` on each of `u_1 … u_k` and `1/(2k+1)` on the center.
pub fn path_law<T: Scalar>(n: usize) -> Result<FiniteSupportMeasure<T>> {
    let g = path_graph(n)?;
    let n64 = n as u64;
    let k = n / 2;
    let atoms = (0..n.div_ceil(2)).map(|i| {
        let mass = if n.is_multiple_of(2) {
            T::ratio(1, k as u64)
        } else if i < k {
            T::ratio(2, n64)
        } else {
            T::ratio(1, n64)
        };
        (RootedGraph::new(g.clone(), i).expect("index within path"), mass)
    });
    FiniteSupportMeasure::from_atoms(atoms.collect::<Vec<_>>())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathPoint {
    x: ExtNat,
    y: ExtNat,
}

impl PathPoint {
    pub fn new(x: impl Into<ExtNat>, y: impl Into<ExtNat>) -> Result<Self> {
        let (x, y) = (x.into(), y.into());
        if x > y {
            return Err(Error::InvalidParameter(format!("path point ({x}, {y}) needs x ≤ y")));
        }
        Ok(PathPoint { x, y })
    }

    pub fn x(self) -> ExtNat {
        self.x
    }

    pub fn y(self) -> ExtNat {
        self.y
    }
}

impl fmt::Display for PathPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Coordinates of a finite rooted path.
pub fn to_point(g: &RootedGraph) -> Result<PathPoint> {
    let graph = g.graph();
    if !graph.is_tree() || graph.max_degree() > 2 {
        return Err(Error::NotAPath);
    }
    let n = graph.vertex_count();
    let d = graph.distances_from(g.root())?;
    let ends: Vec<u64> = (0..n)
        .filter(|&v| graph.degree(v) <= 1)
        .map(|v| d[v].finite().expect("connected"))
        .collect();
    match ends.as_slice() {
        [_] => PathPoint::new(0u64, 0u64),
        [a, b] => PathPoint::new(*a.min(b), *a.max(b)),
        _ => Err(Error::NotAPath),
    }
}

/// Coordinates of a rooted path given by an oracle.
pub fn oracle_to_point(o: &Oracle) -> Result<PathPoint> {
    match o {
        Oracle::BiInfinitePath => PathPoint::new(ExtNat::Infinite, ExtNat::Infinite),
        Oracle::SemiInfinitePath { end_distance } => PathPoint::new(*end_distance, ExtNat::Infinite),
        other => match other.finite_radius() {
            Some(r) => to_point(&other.ball_at(r)),
            None => Err(Error::NotAPath),
        },
    }
}

/// The path on `−x, …, y` rooted at `0`.
pub fn from_point(p: PathPoint) -> Oracle {
    match (p.x, p.y) {
        (ExtNat::Finite(x), ExtNat::Finite(y)) => {
            let (x, y) = (x as usize, y as usize);
            oracle_finite(RootedGraph::new(Graph::path(x + y + 1), x).expect("root within path"))
        }
        (ExtNat::Finite(x), ExtNat::Infinite) => Oracle::SemiInfinitePath { end_distance: x },
        _ => Oracle::BiInfinitePath,
    }
}

/// Distance between path points, by cases on which coordinates agree.
pub fn rho_tilde<T: Scalar>(p: PathPoint, q: PathPoint) -> T {
    let r = match (p.x == q.x, p.y == q.y) {
        (true, true) => ExtNat::Infinite,
        (false, true) => p.x.min(q.x),
        (true, false) => p.y.min(q.y),
        (false, false) => p.x.min(q.x).min(p.y).min(q.y),
    };
    r.reciprocal_succ()
}

/// Mass that the law of `P_n` gives to the strip `{x ≥ m}`.
pub fn strip_mass<T: Scalar>(n: usize, m: usize) -> Result<T> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter("strip mass needs n ≥ 1 and m ≥ 1".into()));
    }
    let k = (n / 2) as u64;
    let m = m as u64;
    if m > k || (n.is_multiple_of(2) && m == k) {
        return Ok(T::zero());
    }
    Ok(if n % 2 == 1 {
        T::one() - T::ratio(2 * m, n as u64)
    } else {
        T::one() - T::ratio(m, k)
    })
}

/// A point of `αℕ²`, each coordinate `1/n` or `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaPoint<T> {
    pub a: T,
    pub b: T,
}

pub fn alpha_embed<T: Scalar>(p: PathPoint) -> AlphaPoint<T> {
    AlphaPoint { a: p.x.reciprocal_succ(), b: p.y.reciprocal_succ() }
}

pub fn d_inf<T: Scalar>(p: &AlphaPoint<T>, q: &AlphaPoint<T>) -> T {
    let da = (p.a.clone() - q.a.clone()).abs();
    let db = (p.b.clone() - q.b.clone()).abs();
    if da > db {
        da
    } else {
        db
    }
}
