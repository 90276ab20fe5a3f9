use std::time::Instant;

use crate::cover::{AdmissionEvent, BicriteriaSolution, CoverInstance};
use crate::error::Result;
use crate::objectives::{InstrumentedOracle, SubmodularOracle};
use crate::scalar::{ladder_value, Scalar};
use crate::stream::{check_epsilon, StreamParams, StreamState};
use crate::usm::UsmAlgorithm;

/// Multi-pass cover with the default options (no trace).
pub fn multi<T: Scalar>(instance: &CoverInstance<'_, T>, epsilon: T, usm: &UsmAlgorithm) -> Result<BicriteriaSolution<T>> {
    multi_with(instance, epsilon, usm, false)
}

/// Runs a filtering pass for each cost guess `w_min·(1+ε)^i`, `i = 0, 1, ..`,
/// and returns the first pass whose solution reaches `γ(1-ε)τ`.
///
/// Guesses stop once they exceed `w(U)·(1+ε)`; the best pass is then
/// returned with `feasible = false`.
pub fn multi_with<T: Scalar>(
    instance: &CoverInstance<'_, T>,
    epsilon: T,
    usm: &UsmAlgorithm,
    trace: bool,
) -> Result<BicriteriaSolution<T>> {
    check_epsilon(epsilon)?;
    let started = Instant::now();
    let universe = instance.universe;
    let oracle = InstrumentedOracle::new(instance.oracle);

    if instance.tau <= T::zero() {
        let value = oracle.evaluate(&[]);
        let mut solution = BicriteriaSolution::new(Vec::new(), value, universe, true);
        solution.metrics.queries = oracle.queries();
        solution.metrics.raw_queries = oracle.queries();
        solution.metrics.wall_time = started.elapsed();
        return Ok(solution);
    }

    let target = usm.gamma::<T>() * (T::one() - epsilon) * instance.tau;
    // preliminary pass: w_min and w(U)
    let mut passes = 1u32;
    let mut guess_passes = 0u32;
    let mut peak = T::zero();
    let mut raw_extra = 0u64;
    let mut events = Vec::new();
    let mut best: Option<BicriteriaSolution<T>> = None;

    if !universe.is_empty() {
        let w_min = universe.w_min();
        let limit = universe.total_cost() * (T::one() + epsilon);
        let mut exp = 0i64;
        loop {
            let guess = w_min * ladder_value(epsilon, exp);
            if guess > limit {
                break;
            }
            let params = StreamParams::new(epsilon, instance.tau, guess)?;
            let mut state = StreamState::new(params, &oracle);
            for &u in universe.order() {
                let outcome = state.offer(&oracle, universe, u)?;
                if trace {
                    events.push(AdmissionEvent { guess: exp, element: u, outcome });
                }
                if state.is_closed() {
                    break;
                }
            }
            passes += 1;
            guess_passes += 1;
            let solution = state.finalize(&oracle, universe, usm)?;
            raw_extra += solution.metrics.raw_queries - solution.metrics.queries;
            if solution.metrics.peak_stored_cost > peak {
                peak = solution.metrics.peak_stored_cost;
            }
            let certified = solution.value >= target;
            if certified || best.as_ref().is_none_or(|b| solution.value > b.value) {
                best = Some(solution);
            }
            if certified {
                break;
            }
            exp += 1;
        }
    }

    let mut solution = match best {
        Some(s) => s,
        None => {
            let value = oracle.evaluate(&[]);
            BicriteriaSolution::new(Vec::new(), value, universe, false)
        }
    };
    solution.feasible = solution.value >= target;
    let m = &mut solution.metrics;
    m.queries = oracle.queries();
    m.raw_queries = m.queries + raw_extra;
    m.passes = passes;
    m.guess_passes = guess_passes;
    m.peak_stored_cost = peak;
    m.wall_time = started.elapsed();
    solution.trace = events;
    Ok(solution)
}
