//! The single-pass filter underlying every driver.
//!
//! Elements are offered one at a time to `b = ⌈2/ε⌉` disjoint buffers. An
//! element is stored in the first buffer where its marginal density reaches
//! `ετ / (2·OPT_guess)`; elements costing more than the guess are dropped
//! unseen. When a buffer's cost passes `2·OPT_guess/ε` the stream closes. On
//! finalize a USM routine runs on the union of the buffers and the best of
//! that set and the buffers is returned.

use crate::cover::{AdmissionEvent, BicriteriaSolution, Offer};
use crate::error::{Error, Result};
use crate::objectives::{CostedUniverse, ElementId, InstrumentedOracle, SubmodularOracle};
use crate::scalar::{bucket_count, Scalar};
use crate::usm::UsmAlgorithm;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamParams<T: Scalar> {
    pub epsilon: T,
    pub tau: T,
    pub opt_guess: T,
}

impl<T: Scalar> StreamParams<T> {
    pub fn new(epsilon: T, tau: T, opt_guess: T) -> Result<Self> {
        check_epsilon(epsilon)?;
        if !(tau > T::zero()) || !tau.is_finite() {
            return Err(Error::input(format!("threshold must be positive and finite, got {tau}")));
        }
        if !(opt_guess > T::zero()) || !opt_guess.is_finite() {
            return Err(Error::input(format!("cost guess must be positive and finite, got {opt_guess}")));
        }
        Ok(Self { epsilon, tau, opt_guess })
    }

    pub fn buckets(&self) -> usize {
        bucket_count(self.epsilon)
    }

    /// Density threshold `ετ / (2·guess)`.
    pub fn threshold(&self) -> T {
        self.epsilon * self.tau / (T::lit(2.0) * self.opt_guess)
    }

    /// Buffer capacity `2·guess/ε`.
    pub fn capacity(&self) -> T {
        T::lit(2.0) * self.opt_guess / self.epsilon
    }
}

pub(crate) fn check_epsilon<T: Scalar>(epsilon: T) -> Result<()> {
    if epsilon > T::zero() && epsilon < T::one() {
        Ok(())
    } else {
        Err(Error::input(format!("epsilon must lie in (0, 1), got {epsilon}")))
    }
}

/// Disjoint buffers with cached values and costs.
#[derive(Debug, Clone)]
pub(crate) struct BufferSet<T: Scalar> {
    sets: Vec<Vec<ElementId>>,
    values: Vec<T>,
    costs: Vec<T>,
    stored: Vec<ElementId>,
    total_cost: T,
}

impl<T: Scalar> BufferSet<T> {
    pub(crate) fn new(buckets: usize, empty_value: T) -> Self {
        Self {
            sets: vec![Vec::new(); buckets],
            values: vec![empty_value; buckets],
            costs: vec![T::zero(); buckets],
            stored: Vec::new(),
            total_cost: T::zero(),
        }
    }

    /// First buffer whose marginal gain for `u` passes `accept`, with the
    /// value of that buffer after adding `u`. One query per buffer probed.
    pub(crate) fn first_fit(
        &self,
        oracle: &dyn SubmodularOracle<T>,
        u: ElementId,
        accept: impl Fn(T) -> bool,
        probes: &mut u64,
    ) -> Option<(usize, T)> {
        let mut scratch = Vec::new();
        for (j, set) in self.sets.iter().enumerate() {
            scratch.clear();
            scratch.extend_from_slice(set);
            scratch.push(u);
            *probes += 1;
            let with = oracle.evaluate(&scratch);
            if accept(with - self.values[j]) {
                return Some((j, with));
            }
        }
        None
    }

    pub(crate) fn admit(&mut self, j: usize, u: ElementId, cost: T, value: T) {
        self.sets[j].push(u);
        self.values[j] = value;
        self.costs[j] += cost;
        self.stored.push(u);
        self.total_cost += cost;
    }

    pub(crate) fn union(&self) -> &[ElementId] {
        &self.stored
    }

    pub(crate) fn total_cost(&self) -> T {
        self.total_cost
    }

    pub(crate) fn all_below(&self, cap: T) -> bool {
        self.costs.iter().all(|&c| c < cap)
    }

    pub(crate) fn cost(&self, j: usize) -> T {
        self.costs[j]
    }

    pub(crate) fn set(&self, j: usize) -> &[ElementId] {
        &self.sets[j]
    }

    pub(crate) fn len(&self) -> usize {
        self.sets.len()
    }

    /// Highest-valued buffer, lowest index on ties.
    pub(crate) fn best(&self) -> (usize, T) {
        let mut best = (0, self.values[0]);
        for (j, &v) in self.values.iter().enumerate().skip(1) {
            if v > best.1 {
                best = (j, v);
            }
        }
        best
    }
}

/// Mutable state of one filtering pass.
#[derive(Debug, Clone)]
pub struct StreamState<T: Scalar> {
    params: StreamParams<T>,
    buffers: Option<BufferSet<T>>,
    closed: bool,
    consumed: usize,
    peak_stored: T,
    probes: u64,
    queries_at_start: u64,
}

impl<T: Scalar> StreamState<T> {
    pub fn new(params: StreamParams<T>, oracle: &InstrumentedOracle<'_, T>) -> Self {
        Self {
            params,
            buffers: None,
            closed: false,
            consumed: 0,
            peak_stored: T::zero(),
            probes: 0,
            queries_at_start: oracle.queries(),
        }
    }

    pub fn params(&self) -> &StreamParams<T> {
        &self.params
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn elements_consumed(&self) -> usize {
        self.consumed
    }

    pub fn peak_stored_cost(&self) -> T {
        self.peak_stored
    }

    pub fn stored_cost(&self) -> T {
        self.buffers.as_ref().map_or(T::zero(), BufferSet::total_cost)
    }

    /// Buffer contents `S_1..S_b` (empty until the first probe).
    pub fn buffers(&self) -> Vec<Vec<ElementId>> {
        match &self.buffers {
            Some(b) => (0..b.len()).map(|j| b.set(j).to_vec()).collect(),
            None => vec![Vec::new(); self.params.buckets()],
        }
    }

    pub fn buffer_costs(&self) -> Vec<T> {
        match &self.buffers {
            Some(b) => (0..b.len()).map(|j| b.cost(j)).collect(),
            None => vec![T::zero(); self.params.buckets()],
        }
    }

    fn buffers_mut(&mut self, oracle: &InstrumentedOracle<'_, T>) -> &mut BufferSet<T> {
        let buckets = self.params.buckets();
        self.buffers.get_or_insert_with(|| BufferSet::new(buckets, oracle.evaluate(&[])))
    }

    /// Offers `u`. Elements costlier than the guess are discarded without
    /// any query; otherwise up to `b` buffers are probed in index order.
    pub fn offer(&mut self, oracle: &InstrumentedOracle<'_, T>, universe: &CostedUniverse<T>, u: ElementId) -> Result<Offer> {
        if self.closed {
            return Err(Error::Contract("element offered after the stream closed".into()));
        }
        self.consumed += 1;
        let w = universe.cost(u);
        if w > self.params.opt_guess {
            return Ok(Offer::Discarded);
        }
        let theta = self.params.threshold();
        let cap = self.params.capacity();
        let mut probes = 0;
        let hit = {
            let buffers = self.buffers_mut(oracle);
            buffers.first_fit(oracle, u, |gain| gain / w >= theta, &mut probes)
        };
        self.probes += probes;
        let Some((j, value)) = hit else {
            return Ok(Offer::Discarded);
        };
        let buffers = self.buffers.as_mut().expect("probed buffers exist");
        buffers.admit(j, u, w, value);
        let over = buffers.cost(j) > cap;
        let stored = buffers.total_cost();
        if stored > self.peak_stored {
            self.peak_stored = stored;
        }
        if over {
            self.closed = true;
            Ok(Offer::AdmittedAndClosed(j + 1))
        } else {
            Ok(Offer::Admitted(j + 1))
        }
    }

    /// Runs `usm` on the union of the buffers and returns the best of that
    /// set and the buffers (lowest index on ties, the USM set being index 0).
    pub fn finalize(
        self,
        oracle: &InstrumentedOracle<'_, T>,
        universe: &CostedUniverse<T>,
        usm: &UsmAlgorithm,
    ) -> Result<BicriteriaSolution<T>> {
        let buckets = self.params.buckets();
        let buffers = match self.buffers {
            Some(b) => b,
            None => BufferSet::new(buckets, oracle.evaluate(&[])),
        };
        let s0 = usm.run(oracle, buffers.union())?;
        let f0 = oracle.evaluate(&s0);
        let (j, fj) = buffers.best();
        let (set, value) = if f0 >= fj { (s0, f0) } else { (buffers.set(j).to_vec(), fj) };
        let target = usm.gamma::<T>() * (T::one() - self.params.epsilon) * self.params.tau;
        let mut solution = BicriteriaSolution::new(set, value, universe, value >= target);
        let m = &mut solution.metrics;
        m.queries = oracle.queries() - self.queries_at_start;
        m.raw_queries = m.queries + self.probes;
        m.passes = 1;
        m.guess_passes = 1;
        m.peak_stored_cost = self.peak_stored;
        m.terminated_early = self.closed;
        Ok(solution)
    }
}

/// Offers `universe` in stream order until the stream closes, then
/// finalizes. Returns the solution and the per-element outcomes.
pub fn run_stream<T: Scalar>(
    params: StreamParams<T>,
    oracle: &InstrumentedOracle<'_, T>,
    universe: &CostedUniverse<T>,
    usm: &UsmAlgorithm,
) -> Result<(BicriteriaSolution<T>, Vec<AdmissionEvent>)> {
    let mut state = StreamState::new(params, oracle);
    let mut events = Vec::new();
    for &u in universe.order() {
        let outcome = state.offer(oracle, universe, u)?;
        events.push(AdmissionEvent { guess: 0, element: u, outcome });
        if state.is_closed() {
            break;
        }
    }
    Ok((state.finalize(oracle, universe, usm)?, events))
}
