//! Mass transport for finitely supported measures.
//!
//! Both sides of the transport identity are linear in the transport function,
//! and a finitely supported measure only moves mass between finitely many
//! birooted classes, so checking indicator functions of those classes decides
//! the identity for every nonnegative function.

use std::collections::{BTreeMap, BTreeSet};

use crate::canon::{component_classes, CanonKey, Canonical};
use crate::error::{Error, Result};
use crate::graph::{BirootedGraph, Graph};
use crate::law::{law, FiniteSupportMeasure};
use crate::Scalar;

/// Transport into and out of the root, per birooted class.
#[derive(Debug, Clone)]
pub struct TransportCensus<T> {
    classes: BTreeMap<CanonKey, Flow<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow<T> {
    /// Mass sent to the root: classes `[G, x, o]`.
    pub mass_in: T,
    /// Mass sent from the root: classes `[G, o, x]`.
    pub mass_out: T,
}

impl<T: Scalar> TransportCensus<T> {
    pub fn get(&self, key: &CanonKey) -> Option<&Flow<T>> {
        self.classes.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CanonKey, &Flow<T>)> {
        self.classes.iter()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn birooted(g: &Graph, a: usize, b: usize) -> BirootedGraph {
    BirootedGraph::new(g.clone(), a, b).expect("representatives are connected")
}

pub fn transport_census<T: Scalar>(mu: &FiniteSupportMeasure<T>) -> TransportCensus<T> {
    let mut classes: BTreeMap<CanonKey, Flow<T>> = BTreeMap::new();
    let mut add = |key: CanonKey, mass: &T, incoming: bool| {
        let flow = classes.entry(key).or_insert_with(|| Flow { mass_in: T::zero(), mass_out: T::zero() });
        let slot = if incoming { &mut flow.mass_in } else { &mut flow.mass_out };
        *slot = slot.clone() + mass.clone();
    };
    for atom in mu.atoms() {
        let g = atom.representative.graph();
        let o = atom.representative.root();
        for x in 0..g.vertex_count() {
            add(birooted(g, x, o).canonical_key(), &atom.mass, true);
            add(birooted(g, o, x).canonical_key(), &atom.mass, false);
        }
    }
    TransportCensus { classes }
}

/// Both sides of the transport identity for an explicit function on birooted graphs:
/// `(∫ Σ_x f[G, x, o] dμ, ∫ Σ_x f[G, o, x] dμ)`.
pub fn transport_sides<T: Scalar>(mu: &FiniteSupportMeasure<T>, f: impl Fn(&BirootedGraph) -> T) -> (T, T) {
    let mut lhs = T::zero();
    let mut rhs = T::zero();
    for atom in mu.atoms() {
        let g = atom.representative.graph();
        let o = atom.representative.root();
        for x in 0..g.vertex_count() {
            lhs = lhs + atom.mass.clone() * f(&birooted(g, x, o));
            rhs = rhs + atom.mass.clone() * f(&birooted(g, o, x));
        }
    }
    (lhs, rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnimodularityVerdict<T> {
    Unimodular,
    /// The smallest class in key order where transport does not balance.
    Violation { class: CanonKey, lhs: T, rhs: T },
}

impl<T> UnimodularityVerdict<T> {
    pub fn is_unimodular(&self) -> bool {
        matches!(self, UnimodularityVerdict::Unimodular)
    }
}

pub fn is_unimodular<T: Scalar>(mu: &FiniteSupportMeasure<T>) -> UnimodularityVerdict<T> {
    transport_census(mu)
        .classes
        .into_iter()
        .find(|(_, f)| !f.mass_in.approx_eq(&f.mass_out))
        .map_or(UnimodularityVerdict::Unimodular, |(class, f)| UnimodularityVerdict::Violation {
            class,
            lhs: f.mass_in,
            rhs: f.mass_out,
        })
}

fn rooted_component_keys(g: &Graph) -> Result<BTreeSet<CanonKey>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(component_classes(g).into_iter().map(|c| c.key).collect())
}

/// Every atom is the class of some rooted component of `g`.
pub fn is_sustained_by<T: Scalar>(mu: &FiniteSupportMeasure<T>, g: &Graph) -> Result<bool> {
    let keys = rooted_component_keys(g)?;
    Ok(mu.keys().all(|k| keys.contains(k)))
}

/// Sustained, and every rooted component class of `g` carries mass.
pub fn is_strictly_sustained<T: Scalar>(mu: &FiniteSupportMeasure<T>, g: &Graph) -> Result<bool> {
    let keys = rooted_component_keys(g)?;
    Ok(mu.len() == keys.len() && mu.keys().all(|k| keys.contains(k)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Characterization {
    pub is_unimodular: bool,
    pub equals_law: bool,
}

/// For `mu` sustained by a connected graph `g`, reports whether `mu` is
/// unimodular and whether it is the law of `g`. The two always agree.
pub fn characterize<T: Scalar>(mu: &FiniteSupportMeasure<T>, g: &Graph) -> Result<Characterization> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !is_sustained_by(mu, g)? {
        return Err(Error::NotSustained);
    }
    let own = law::<T>(g)?;
    let equals_law = own.len() == mu.len()
        && own.atoms().iter().zip(mu.atoms()).all(|(a, b)| a.key == b.key && a.mass.approx_eq(&b.mass));
    Ok(Characterization { is_unimodular: is_unimodular(mu).is_unimodular(), equals_law })
}
