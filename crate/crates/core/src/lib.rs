pub mod canon;
pub mod error;
pub mod extnat;
pub mod graph;
pub mod hyperfinite;
pub mod law;
pub mod metric;
pub mod pathspace;
pub mod scalar;
pub mod trees;
pub mod unimodular;

pub use canon::{canonical_key, is_rooted_isomorphic, orbit_size, CanonKey, Canonical};
pub use error::{Error, Result};
pub use extnat::ExtNat;
pub use graph::{max_ball_size, BirootedGraph, Graph, RootedGraph};
pub use law::{Atom, BallDistribution, FiniteSupportMeasure};
pub use metric::{rho, rho_value, BallOracle, Oracle, ProximityResult, RhoValue};
pub use scalar::Scalar;

/// Exact rational numbers; the default scalar everywhere.
pub type Rational = num_rational::BigRational;
/// Exact measure on rooted classes.
pub type Measure = FiniteSupportMeasure<Rational>;
/// Exact ball-class distribution.
pub type BallMarginal = BallDistribution<Rational>;
