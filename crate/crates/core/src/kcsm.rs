//! One-pass knapsack-constrained maximization: a filtering instance per
//! value guess `(1+ε)^i`, fed the same stream.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::cover::{AdmissionEvent, BicriteriaSolution, Offer};
use crate::error::{Error, Result};
use crate::objectives::{CostedUniverse, ElementId, InstrumentedOracle, SubmodularOracle};
use crate::scalar::{bucket_count, ladder_ceil, ladder_floor, ladder_value, Scalar};
use crate::stream::{check_epsilon, BufferSet};
use crate::usm::UsmAlgorithm;

/// Knapsack-constrained maximization: maximize `f(X)` with `w(X) <= kappa`.
#[derive(Clone, Copy)]
pub struct KcsmInstance<'a, T: Scalar> {
    pub universe: &'a CostedUniverse<T>,
    pub oracle: &'a dyn SubmodularOracle<T>,
    pub kappa: T,
}

impl<'a, T: Scalar> KcsmInstance<'a, T> {
    pub fn new(universe: &'a CostedUniverse<T>, oracle: &'a dyn SubmodularOracle<T>, kappa: T) -> Result<Self> {
        if universe.len() != oracle.ground_size() {
            return Err(Error::input(format!(
                "universe has {} elements but the oracle's ground set has {}",
                universe.len(),
                oracle.ground_size()
            )));
        }
        if !(kappa > T::zero()) || !kappa.is_finite() {
            return Err(Error::input(format!("budget must be positive and finite, got {kappa}")));
        }
        Ok(Self { universe, oracle, kappa })
    }
}

/// Guess window after one element.
#[derive(Debug, Clone, PartialEq)]
pub struct TauLadder<T: Scalar> {
    /// Running maximum of `f({x})/w(x)` over every consumed element.
    pub max_density: T,
    /// Same maximum restricted to elements with `w(x) <= κ`.
    pub max_feasible_density: T,
    /// Largest `f({x})` over elements with `w(x) <= κ`.
    pub max_feasible_value: T,
    /// Live guess exponents, ascending.
    pub live: Vec<i64>,
}

pub fn single_max<T: Scalar>(instance: &KcsmInstance<'_, T>, epsilon: T, usm: &UsmAlgorithm) -> Result<BicriteriaSolution<T>> {
    single_max_with(instance, epsilon, usm, false).map(|(s, _)| s)
}

/// The live window is `[v/(1+ε), 2·m_f·κ/ε]` on the guess ladder, where `v`
/// and `m_f` are the largest singleton value and density among elements
/// that fit the budget. It always contains the guess `q` with
/// `(1+ε)^q <= OPT < (1+ε)^{q+1}` once an element of positive value fits.
pub fn single_max_with<T: Scalar>(
    instance: &KcsmInstance<'_, T>,
    epsilon: T,
    usm: &UsmAlgorithm,
    trace: bool,
) -> Result<(BicriteriaSolution<T>, Vec<TauLadder<T>>)> {
    check_epsilon(epsilon)?;
    let started = Instant::now();
    let universe = instance.universe;
    let kappa = instance.kappa;
    let oracle = InstrumentedOracle::new(instance.oracle);
    let two = T::lit(2.0);
    let cap = two * kappa / epsilon;
    let buckets = bucket_count(epsilon);

    let mut empty_value: Option<T> = None;
    let mut max_density = T::neg_infinity();
    let mut max_feasible_density = T::zero();
    let mut max_feasible_value = T::zero();
    let mut instances: BTreeMap<i64, BufferSet<T>> = BTreeMap::new();
    let mut peak = T::zero();
    let mut probes = 0u64;
    let mut xi: Option<T> = None;
    let mut per_element = Vec::with_capacity(universe.len());
    let mut stored_after = Vec::with_capacity(universe.len());
    let mut events = Vec::new();
    let mut ladders = Vec::new();

    for &x in universe.order() {
        let before = oracle.queries();
        let w = universe.cost(x);
        let fx = oracle.evaluate(&[x]);
        let density = fx / w;
        if density > max_density {
            max_density = density;
        }
        if fx > T::zero() {
            let ratio = w / fx;
            xi = Some(xi.map_or(ratio, |r| r.min(ratio)));
        }
        if w <= kappa && fx > T::zero() {
            if density > max_feasible_density {
                max_feasible_density = density;
            }
            if fx > max_feasible_value {
                max_feasible_value = fx;
            }
            let lo = ladder_ceil(epsilon, max_feasible_value / (T::one() + epsilon));
            let hi = ladder_floor(epsilon, two * max_feasible_density * kappa / epsilon);
            instances = instances.split_off(&lo);
            for exp in lo..=hi {
                instances.entry(exp).or_insert_with(|| {
                    BufferSet::new(buckets, *empty_value.get_or_insert_with(|| oracle.evaluate(&[])))
                });
            }
        }

        for (&exp, buffers) in instances.iter_mut() {
            let mut outcome = Offer::Discarded;
            let frozen = !buffers.all_below(cap);
            if !frozen && w <= kappa {
                let need = w * epsilon * ladder_value(epsilon, exp) / (two * kappa);
                if let Some((j, value)) = buffers.first_fit(&oracle, x, |gain| gain >= need, &mut probes) {
                    buffers.admit(j, x, w, value);
                    outcome = if buffers.cost(j) >= cap { Offer::AdmittedAndClosed(j + 1) } else { Offer::Admitted(j + 1) };
                }
            }
            if trace {
                events.push(AdmissionEvent { guess: exp, element: x, outcome });
            }
        }

        let stored: T = instances.values().map(BufferSet::total_cost).sum();
        if stored > peak {
            peak = stored;
        }
        stored_after.push(stored);
        per_element.push(oracle.queries() - before);
        if trace {
            ladders.push(TauLadder {
                max_density,
                max_feasible_density,
                max_feasible_value,
                live: instances.keys().copied().collect(),
            });
        }
    }

    let mut best: Option<(Vec<ElementId>, T)> = None;
    for buffers in instances.values() {
        let s0 = usm.run(&oracle, buffers.union())?;
        let f0 = oracle.evaluate(&s0);
        let (j, fj) = buffers.best();
        let candidate = if f0 >= fj { (s0, f0) } else { (buffers.set(j).to_vec(), fj) };
        if best.as_ref().is_none_or(|b| candidate.1 > b.1) {
            best = Some(candidate);
        }
    }
    let (set, value) = match best {
        Some(b) => b,
        None => (Vec::new(), empty_value.unwrap_or_else(|| oracle.evaluate(&[]))),
    };
    let mut solution = BicriteriaSolution::new(set, value, universe, true);
    let m = &mut solution.metrics;
    m.queries = oracle.queries();
    m.raw_queries = m.queries + probes;
    m.passes = 1;
    m.peak_stored_cost = peak;
    m.per_element_queries = per_element;
    m.stored_after_element = stored_after;
    m.xi = xi;
    m.wall_time = started.elapsed();
    solution.trace = events;
    Ok((solution, ladders))
}
