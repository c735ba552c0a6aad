//! Laws of finite graphs and other finitely supported measures on rooted classes.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive};

use crate::canon::{component_classes, CanonKey, Canonical};
use crate::error::{Error, Result};
use crate::graph::{Graph, RootedGraph};
use crate::metric::BallOracle;
use crate::{Rational, Scalar};

/// One atom of a finitely supported measure.
#[derive(Debug, Clone)]
pub struct Atom<T> {
    pub key: CanonKey,
    pub representative: RootedGraph,
    pub mass: T,
}

/// A probability measure with finitely many atoms, sorted by key.
#[derive(Debug, Clone)]
pub struct FiniteSupportMeasure<T> {
    atoms: Vec<Atom<T>>,
}

fn check_total<T: Scalar>(total: &T) -> Result<()> {
    if total.approx_eq(&T::one()) {
        Ok(())
    } else {
        Err(Error::InvalidMeasure(format!("masses sum to {total}, not 1")))
    }
}

impl<T: Scalar> FiniteSupportMeasure<T> {
    /// Builds a measure from (representative, mass) pairs with pairwise distinct classes.
    pub fn from_atoms(atoms: impl IntoIterator<Item = (RootedGraph, T)>) -> Result<Self> {
        let (measure, merged) = Self::from_atoms_merged(atoms)?;
        match merged.first() {
            Some(key) => Err(Error::InvalidMeasure(format!("class {key} appears more than once"))),
            None => Ok(measure),
        }
    }

    /// Like [`from_atoms`](Self::from_atoms), but adds up atoms of the same class.
    /// Also returns the keys that were merged.
    pub fn from_atoms_merged(atoms: impl IntoIterator<Item = (RootedGraph, T)>) -> Result<(Self, Vec<CanonKey>)> {
        let mut by_key: BTreeMap<CanonKey, Atom<T>> = BTreeMap::new();
        let mut merged = Vec::new();
        for (g, mass) in atoms {
            if !mass.is_positive() {
                return Err(Error::InvalidMeasure(format!("mass {mass} is not positive")));
            }
            let key = g.canonical_key();
            match by_key.get_mut(&key) {
                Some(atom) => {
                    atom.mass = atom.mass.clone() + mass;
                    merged.push(key);
                }
                None => {
                    by_key.insert(key.clone(), Atom { key, representative: g, mass });
                }
            }
        }
        let atoms: Vec<Atom<T>> = by_key.into_values().collect();
        check_total(&atoms.iter().fold(T::zero(), |s, a| s + a.mass.clone()))?;
        merged.dedup();
        Ok((FiniteSupportMeasure { atoms }, merged))
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mass_of(&self, key: &CanonKey) -> Option<&T> {
        self.atoms
            .binary_search_by(|a| a.key.cmp(key))
            .ok()
            .map(|i| &self.atoms[i].mass)
    }

    /// Mass of the class of `g`, zero if absent.
    pub fn mass_at(&self, g: &RootedGraph) -> T {
        self.mass_of(&g.canonical_key()).cloned().unwrap_or_else(T::zero)
    }

    pub fn keys(&self) -> impl Iterator<Item = &CanonKey> {
        self.atoms.iter().map(|a| &a.key)
    }
}

impl<T: PartialEq> PartialEq for FiniteSupportMeasure<T> {
    fn eq(&self, other: &Self) -> bool {
        self.atoms.len() == other.atoms.len()
            && self.atoms.iter().zip(&other.atoms).all(|(a, b)| a.key == b.key && a.mass == b.mass)
    }
}

impl<T: fmt::Display> fmt::Display for FiniteSupportMeasure<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.atoms {
            writeln!(f, "{} {}", a.key, a.mass)?;
        }
        Ok(())
    }
}

/// The law of `g`: the distribution of the rooted component at a uniform random vertex.
pub fn law<T: Scalar>(g: &Graph) -> Result<FiniteSupportMeasure<T>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = g.vertex_count() as u64;
    let atoms = component_classes(g)
        .into_iter()
        .map(|c| Atom { mass: T::ratio(c.vertices.len() as u64, n), key: c.key, representative: c.representative })
        .collect();
    Ok(FiniteSupportMeasure { atoms })
}

pub fn dirac<T: Scalar>(g: RootedGraph) -> FiniteSupportMeasure<T> {
    FiniteSupportMeasure { atoms: vec![Atom { key: g.canonical_key(), representative: g, mass: T::one() }] }
}

pub fn integrate<T: Scalar>(mu: &FiniteSupportMeasure<T>, f: impl Fn(&RootedGraph) -> T) -> T {
    mu.atoms.iter().fold(T::zero(), |s, a| s + a.mass.clone() * f(&a.representative))
}

/// `t·mu + (1 − t)·nu`.
pub fn mixture<T: Scalar>(mu: &FiniteSupportMeasure<T>, nu: &FiniteSupportMeasure<T>, t: &T) -> Result<FiniteSupportMeasure<T>> {
    if t.is_negative() || *t > T::one() {
        return Err(Error::InvalidParameter(format!("mixture weight {t} outside [0, 1]")));
    }
    let s = T::one() - t.clone();
    let mut by_key: BTreeMap<CanonKey, Atom<T>> = BTreeMap::new();
    let weighted = mu
        .atoms
        .iter()
        .map(|a| (a, t.clone()))
        .chain(nu.atoms.iter().map(|a| (a, s.clone())));
    for (a, w) in weighted {
        let mass = a.mass.clone() * w;
        if mass.is_zero() {
            continue;
        }
        by_key
            .entry(a.key.clone())
            .and_modify(|e| e.mass = e.mass.clone() + mass.clone())
            .or_insert_with(|| Atom { key: a.key.clone(), representative: a.representative.clone(), mass });
    }
    Ok(FiniteSupportMeasure { atoms: by_key.into_values().collect() })
}

/// A graph whose law is `t·law(g) + (1 − t)·law(h)`, namely
/// `p|V(h)|·g + (q − p)|V(g)|·h` for `t = p/q`.
pub fn convex_witness(g: &Graph, h: &Graph, t: &Rational) -> Result<Graph> {
    if g.is_empty() || h.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if t.is_negative() || *t > Rational::one() {
        return Err(Error::InvalidParameter(format!("weight {t} outside [0, 1]")));
    }
    let too_big = || Error::InvalidParameter(format!("weight {t} has too large a denominator"));
    let p = t.numer().to_usize().ok_or_else(too_big)?;
    let q = t.denom().to_usize().ok_or_else(too_big)?;
    let copies_g = p.checked_mul(h.vertex_count()).ok_or_else(too_big)?;
    let copies_h = (q - p).checked_mul(g.vertex_count()).ok_or_else(too_big)?;
    Ok(g.replicate(copies_g).disjoint_union(&h.replicate(copies_h)))
}

/// Nonempty, connected, and all vertices in one automorphism orbit.
pub fn is_vertex_transitive(g: &Graph) -> bool {
    g.is_connected() && component_classes(g).len() == 1
}

/// Distribution of the radius-`r` ball class around the root.
#[derive(Debug, Clone)]
pub struct BallDistribution<T> {
    radius: usize,
    classes: BTreeMap<CanonKey, (RootedGraph, T)>,
}

impl<T: Scalar> BallDistribution<T> {
    pub(crate) fn from_classes(radius: usize, classes: BTreeMap<CanonKey, (RootedGraph, T)>) -> Result<Self> {
        check_total(&classes.values().fold(T::zero(), |s, (_, w)| s + w.clone()))?;
        Ok(BallDistribution { radius, classes })
    }

    fn accumulate(radius: usize, items: impl IntoIterator<Item = (RootedGraph, T)>) -> Self {
        let mut classes: BTreeMap<CanonKey, (RootedGraph, T)> = BTreeMap::new();
        for (ball, w) in items {
            let key = ball.canonical_key();
            match classes.get_mut(&key) {
                Some((_, acc)) => *acc = acc.clone() + w,
                None => {
                    classes.insert(key, (ball, w));
                }
            }
        }
        BallDistribution { radius, classes }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn weight(&self, key: &CanonKey) -> Option<&T> {
        self.classes.get(key).map(|(_, w)| w)
    }

    /// (key, representative ball, weight) in key order.
    pub fn iter(&self) -> impl Iterator<Item = (&CanonKey, &RootedGraph, &T)> {
        self.classes.iter().map(|(k, (g, w))| (k, g, w))
    }

    /// The radius-`r` marginal, for `r ≤ self.radius()`.
    pub fn coarsen(&self, r: usize) -> Result<Self> {
        if r > self.radius {
            return Err(Error::RadiusMismatch(r, self.radius));
        }
        Ok(Self::accumulate(r, self.classes.values().map(|(g, w)| (g.ball(r), w.clone()))))
    }
}

pub fn ball_pushforward<T: Scalar>(mu: &FiniteSupportMeasure<T>, r: usize) -> BallDistribution<T> {
    BallDistribution::accumulate(r, mu.atoms.iter().map(|a| (a.representative.ball(r), a.mass.clone())))
}

pub fn oracle_pushforward<T: Scalar, O: BallOracle + ?Sized>(oracle: &O, r: usize) -> BallDistribution<T> {
    BallDistribution::accumulate(r, [(oracle.ball_at(r), T::one())])
}

pub fn tv_distance<T: Scalar>(a: &BallDistribution<T>, b: &BallDistribution<T>) -> Result<T> {
    if a.radius != b.radius {
        return Err(Error::RadiusMismatch(a.radius, b.radius));
    }
    let zero = T::zero();
    let mut sum = T::zero();
    for (k, (_, w)) in &a.classes {
        let v = b.weight(k).unwrap_or(&zero);
        sum = sum + (w.clone() - v.clone()).abs();
    }
    for (k, (_, w)) in &b.classes {
        if !a.classes.contains_key(k) {
            sum = sum + w.clone();
        }
    }
    Ok(sum / T::ratio(2, 1))
}
