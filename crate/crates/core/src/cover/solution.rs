use std::time::Duration;

use crate::objectives::{CostedUniverse, ElementId, SubmodularOracle};
use crate::scalar::Scalar;

/// Result of offering one element to a set of buffers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Offer {
    /// Stored in buffer `j` (1-based; index 0 is the USM set).
    Admitted(usize),
    /// Stored in buffer `j`, which then exceeded its capacity and closed the
    /// stream.
    AdmittedAndClosed(usize),
    Discarded,
}

impl Offer {
    pub fn buffer(self) -> Option<usize> {
        match self {
            Offer::Admitted(j) | Offer::AdmittedAndClosed(j) => Some(j),
            Offer::Discarded => None,
        }
    }
}

/// One admission decision, recorded when tracing is enabled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdmissionEvent {
    /// Exponent `i` of the guess that processed the element. For the cover
    /// drivers the guess is `w_min·(1+ε)^i` (multi) or `(1+ε)^i` (single);
    /// for single-max it is the value guess `(1+ε)^i`.
    pub guess: i64,
    pub element: ElementId,
    pub outcome: Offer,
}

/// Resource accounting for one algorithm run.
#[derive(Debug, Clone, Default)]
pub struct RunMetrics<T: Scalar> {
    /// Oracle queries actually made.
    pub queries: u64,
    /// Queries the run would have made without cached buffer values.
    pub raw_queries: u64,
    /// Reads of the universe, including a preliminary cost pass.
    pub passes: u32,
    /// Filtering passes, one per guess tried (multi only).
    pub guess_passes: u32,
    /// Maximum, over time, of the total cost held in buffers.
    pub peak_stored_cost: T,
    /// Queries made while processing each arriving element (one-pass drivers).
    pub per_element_queries: Vec<u64>,
    /// Total stored cost after each arriving element (one-pass drivers).
    pub stored_after_element: Vec<T>,
    /// `min_u w(u)/f({u})` over the elements seen, when the driver queried
    /// singletons.
    pub xi: Option<T>,
    pub terminated_early: bool,
    pub wall_time: Duration,
}

/// A returned set with its value, cost and the certificate flag.
#[derive(Debug, Clone)]
pub struct BicriteriaSolution<T: Scalar> {
    /// Members, sorted ascending.
    pub set: Vec<ElementId>,
    pub value: T,
    pub cost: T,
    /// Whether the value reached the driver's target (`γ(1-ε)τ` for cover).
    pub feasible: bool,
    pub metrics: RunMetrics<T>,
    pub trace: Vec<AdmissionEvent>,
}

impl<T: Scalar> BicriteriaSolution<T> {
    pub(crate) fn new(mut set: Vec<ElementId>, value: T, universe: &CostedUniverse<T>, feasible: bool) -> Self {
        set.sort_unstable();
        let cost = universe.cost_of(&set);
        Self { set, value, cost, feasible, metrics: RunMetrics::default(), trace: Vec::new() }
    }

    /// Recomputes value and cost from the set and compares them with the
    /// stored figures.
    pub fn is_consistent(&self, oracle: &dyn SubmodularOracle<T>, universe: &CostedUniverse<T>) -> bool {
        let mut sorted = self.set.clone();
        sorted.sort_unstable();
        oracle.evaluate(&sorted) == self.value && universe.cost_of(&sorted) == self.cost
    }
}
