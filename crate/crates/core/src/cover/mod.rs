//! Submodular cover drivers: the multi-pass guess ladder and the one-pass
//! parallel-guess variant, plus the shared solution, metrics and bound types.

mod bounds;
mod multi;
mod single;
mod solution;

pub use bounds::{
    multi_bounds, single_bounds, single_max_bounds, single_memory, stored_factor, BoundReport, BoundKind,
};
pub use multi::{multi, multi_with};
pub use single::{single, single_with, LadderSnapshot, SingleOptions};
pub use solution::{AdmissionEvent, BicriteriaSolution, Offer, RunMetrics};

use crate::error::{Error, Result};
use crate::objectives::{CostedUniverse, SubmodularOracle};
use crate::scalar::Scalar;

/// Submodular cover: find a cheap `X` with `f(X) >= tau`.
#[derive(Clone, Copy)]
pub struct CoverInstance<'a, T: Scalar> {
    pub universe: &'a CostedUniverse<T>,
    pub oracle: &'a dyn SubmodularOracle<T>,
    pub tau: T,
}

impl<'a, T: Scalar> CoverInstance<'a, T> {
    pub fn new(universe: &'a CostedUniverse<T>, oracle: &'a dyn SubmodularOracle<T>, tau: T) -> Result<Self> {
        if universe.len() != oracle.ground_size() {
            return Err(Error::input(format!(
                "universe has {} elements but the oracle's ground set has {}",
                universe.len(),
                oracle.ground_size()
            )));
        }
        if !tau.is_finite() {
            return Err(Error::input("threshold must be finite"));
        }
        Ok(Self { universe, oracle, tau })
    }
}
