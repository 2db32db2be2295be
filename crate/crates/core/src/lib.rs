//! Exact-arithmetic analysis of fractional perfect b-matching polytopes.
//!
//! For a finite undirected multigraph `G` (loops and parallel edges allowed) and a
//! nonnegative rational weighting `b` of its vertices, the polytope `P(G,b)` consists
//! of all nonnegative edge weightings whose incident-edge sums equal `b_v` at every
//! vertex `v` (a loop counts once at its vertex).  This crate decides nonemptiness and
//! strict positivity with certificates, computes dimensions, enumerates and tests
//! vertices and polytope edges, and builds the full face lattice — all in exact
//! rational arithmetic, with an independent brute-force oracle for cross-checking.
//!
//! Entry points, by module:
//! - [`graph`]: the multigraph data model, edge/vertex weight vectors, JSON format.
//! - [`linalg`]: dense exact rational elimination (rank, nullity, affine solve).
//! - [`structure`]: components, bipartiteness, incidence matrices, kernel bases,
//!   cycle-structure classification.
//! - [`flow`]: solving `I_G x = a` for arbitrary rational demands.
//! - [`feasibility`]: nonemptiness / strict-positivity decisions with certificates.
//! - [`polytope`]: vertex enumeration, vertex and edge tests, dimension.
//! - [`lattice`]: the lattice of face graphs, meets, joins, DOT/JSON export.
//! - [`oracle`]: deliberately exponential ground truth used by tests and audits.

pub mod caps;
pub mod error;
pub mod feasibility;
pub mod fixtures;
pub mod flow;
pub mod format;
pub mod graph;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod polytope;
pub mod rat;
pub mod structure;

mod partitions;

pub use caps::Caps;
pub use error::Error;
pub use graph::{
    BVector, DemandVector, EdgeId, EdgeSet, EdgeVector, FaceGraph, MultiGraph, SpanningSubgraph,
    VertexId,
};
pub use rat::Rat;
