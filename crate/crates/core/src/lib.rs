//! Lower bounds on the maximum induced acyclic vertex set of a digraph.
//!
//! Three bounds are computed:
//!
//! * the AGJS bound `Σ rho(v)` ([`bounds::agjs_bound`]),
//! * its neighborhood refinement ([`bounds::neighborhood_bound`]),
//! * a variance refinement driven by the exact variance of the DL
//!   feedback vertex set size ([`variance::variance_bound`]).
//!
//! [`oracles`] holds brute-force ground truth used to check all of them,
//! [`models`] the seeded random digraph generators, and [`experiment`] the
//! table runner behind the command-line tool.

pub mod bounds;
pub mod digraph;
pub mod dl;
pub mod error;
pub mod experiment;
pub mod models;
pub mod oracles;
pub mod report;
pub mod variance;
pub mod verify;

pub use digraph::{ComponentLabels, Digraph, PairCase, PairOverlap, VertexStats};
pub use error::{Error, Result};
pub use report::{compute_bounds, BoundsReport};
