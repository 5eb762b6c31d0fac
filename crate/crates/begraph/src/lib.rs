//! Basis exchange graphs of matroids.
//!
//! The library has two halves. The combinatorial half decides whether an
//! abstract graph is the basis exchange graph of a matroid and, if so,
//! recovers the matroid: [`graph`] holds the dense graph type with
//! distances, isomorphism and common-neighbour machinery, [`linegraph`]
//! recovers bipartite root graphs from line graphs, [`matroid`] models
//! matroids as explicit basis systems, and [`reconstruct`] runs the node
//! labelling of an abstract basis exchange graph.
//!
//! The geometric half, [`geometry`], is an exact-arithmetic laboratory for
//! small polytopes: brute-force facet enumeration, vertex-facet incidence,
//! polytope graphs and dual graphs, and 3-cell censuses. It is generic over
//! the [`scalar::Scalar`] field; the shipped tools instantiate it with the
//! arbitrary-precision rational [`Rat`].

pub mod format;
pub mod geometry;
pub mod graph;
pub mod linegraph;
pub mod matroid;
pub mod reconstruct;
pub mod scalar;
pub mod subset;

pub use graph::{DistanceTable, Graph};
pub use matroid::Matroid;
pub use reconstruct::ReconstructionOutcome;
pub use subset::Subset;

/// Exact rational scalar backing all shipped geometry.
pub type Rat = num_rational::BigRational;

/// An [`geometry::IncidencePolytope`] over exact rationals.
pub type RatPolytope = geometry::IncidencePolytope<Rat>;
