//! Streaming bicriteria algorithms for non-monotone submodular cover and
//! knapsack-constrained submodular maximization.
//!
//! The core is generic over the scalar type `T: Scalar` (`f32` or `f64`).
//! The aliases below fix `T = f64`, which the harness and CLI use.
//!
//! * [`objectives`]: value oracles, query counting and costed universes.
//! * [`usm`]: unconstrained maximization subroutines.
//! * [`stream`]: the single-guess filtering pass.
//! * [`cover`]: the multi-pass and one-pass cover drivers and their bounds.
//! * [`kcsm`]: the one-pass knapsack driver.
//! * [`exact`]: brute-force reference solvers.
//! * [`ingest`]: dataset loaders and generators.
//! * [`harness`]: baseline plus experiment cells written as CSV.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cover;
pub mod error;
pub mod exact;
pub mod harness;
pub mod ingest;
pub mod kcsm;
pub mod objectives;
pub mod scalar;
pub mod stream;
pub mod usm;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Universe = objectives::CostedUniverse<f64>;
pub type Solution = cover::BicriteriaSolution<f64>;
pub type Metrics = cover::RunMetrics<f64>;
pub type Cover<'a> = cover::CoverInstance<'a, f64>;
pub type Knapsack<'a> = kcsm::KcsmInstance<'a, f64>;
pub type Exact = exact::ExactAnswer<f64>;
pub type Graph = objectives::CutGraph<f64>;
pub type Corpus = objectives::TaggedCorpus<f64>;
