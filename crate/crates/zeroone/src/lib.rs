//! Random 0/1 polytopes at desk scale.
//!
//! A 0/1 polytope is the convex hull of a subset of `{0,1}^d`. This crate
//! generates such vertex sets under three random models, extracts the
//! polytope graph with an exact rational LP adjacency test, computes exact
//! edge and vertex expansion by cut enumeration, certifies expansion lower
//! bounds through coordinate projections, and runs random-walk mixing
//! experiments on the resulting graphs.
//!
//! Module map:
//!
//! - [`bitgeom`]: bit-vector points, point sets, projections, the cube
//!   skeleton, and the point-set text format.
//! - [`hullgraph`]: exact-rational LP membership and skeleton extraction.
//! - [`oracle`]: brute-force facet-enumeration reference for small
//!   dimension, used to cross-validate `hullgraph`.
//! - [`randmodels`]: the balls-into-bins, binomial and uniform models with
//!   seeded, reproducible sampling.
//! - [`expansion`]: exact edge/vertex expansion, Fiedler value, Cheeger
//!   sandwich, and the exact cube vertex-expansion profile.
//! - [`certify`]: projection certificates: `k` selection, fiber loads,
//!   and the `1/(2c)` lower bounds.
//! - [`walk`]: lazy uniform-stationary chains, total-variation
//!   trajectories, mixing times.
//! - [`harness`]: batch experiment runner and report emission.
//!
//! The `zeroone` binary exposes the same functionality as subcommands
//! (`gen`, `skeleton`, `expansion`, `certify`, `walk`, `experiment`); the
//! `examples/` directory has one runnable example per capability.

pub mod bitgeom;
pub mod certify;
pub mod expansion;
pub mod harness;
pub mod hullgraph;
pub mod oracle;
pub mod randmodels;
pub mod walk;

/// Exact rational scalar used for expansion values and certified bounds.
pub type Rational = num::BigRational;

pub use bitgeom::{hamming_distance, hypercube_skeleton, project, BitPoint, FiberMap, PointSet};
pub use certify::{certify_auto, certify_projection, ProjectionCertificate};
pub use expansion::{
    cheeger_bounds, edge_expansion_exact, fiedler_value, harper_vertex_bound,
    vertex_expansion_exact, ExpansionResult,
};
pub use hullgraph::{extract_skeleton, is_edge, lp_membership, SkeletonGraph};
pub use randmodels::{sample_balls_into_bins, sample_binomial, sample_uniform, ModelSpec};
pub use walk::{build_chain, mixing_time, tv_trajectory, ChainSpec};
