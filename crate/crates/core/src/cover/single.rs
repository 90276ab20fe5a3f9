//! One-pass cover: a filtering instance per guess `(1+ε)^i` inside the
//! window `[L, B]`, all fed the same stream.
//!
//! `L` is lowered lazily whenever an element's singleton density beats
//! `ετ/(2L)`. `B` starts at the caller's upper bound and drops to the
//! smallest guess whose best set reaches `γ(1-ε)τ`; instances above `B`
//! are discarded.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::cover::{AdmissionEvent, BicriteriaSolution, CoverInstance, Offer};
use crate::error::{Error, Result};
use crate::objectives::{ElementId, InstrumentedOracle, SubmodularOracle};
use crate::scalar::{bucket_count, ladder_ceil, ladder_value, Scalar};
use crate::stream::{check_epsilon, BufferSet};
use crate::usm::UsmAlgorithm;

#[derive(Debug, Clone, Copy)]
pub struct SingleOptions {
    /// Rerun the USM routine for a guess only when its buffers changed.
    /// Output is identical to rerunning it for every guess on every element.
    pub lazy_usm: bool,
    pub trace: bool,
    /// Record the ladder window after every element.
    pub record_ladder: bool,
}

impl Default for SingleOptions {
    fn default() -> Self {
        Self { lazy_usm: true, trace: false, record_ladder: false }
    }
}

/// Ladder state after one element.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderSnapshot<T: Scalar> {
    /// Lower bound `L`; `None` until an element with positive value arrives.
    pub lower: Option<T>,
    /// Exponent of the upper bound `B` (`B = (1+ε)^upper_exp` once certified).
    pub upper_exp: i64,
    /// Live guess exponents, ascending.
    pub live: Vec<i64>,
}

struct GuessInstance<T: Scalar> {
    buffers: BufferSet<T>,
    usm_set: Vec<ElementId>,
    usm_value: T,
}

impl<T: Scalar> GuessInstance<T> {
    fn best_value(&self) -> T {
        self.usm_value.max(self.buffers.best().1)
    }

    fn best(&self) -> (Vec<ElementId>, T) {
        let (j, v) = self.buffers.best();
        if self.usm_value >= v {
            (self.usm_set.clone(), self.usm_value)
        } else {
            (self.buffers.set(j).to_vec(), v)
        }
    }
}

pub fn single<T: Scalar>(
    instance: &CoverInstance<'_, T>,
    epsilon: T,
    upper_bound: T,
    usm: &UsmAlgorithm,
) -> Result<BicriteriaSolution<T>> {
    single_with(instance, epsilon, upper_bound, usm, SingleOptions::default()).map(|(s, _)| s)
}

/// The initial upper exponent is the smallest guess `>= upper_bound`, so a
/// guess no smaller than OPT is live whenever `upper_bound >= OPT`.
pub fn single_with<T: Scalar>(
    instance: &CoverInstance<'_, T>,
    epsilon: T,
    upper_bound: T,
    usm: &UsmAlgorithm,
    options: SingleOptions,
) -> Result<(BicriteriaSolution<T>, Vec<LadderSnapshot<T>>)> {
    check_epsilon(epsilon)?;
    let universe = instance.universe;
    if !(upper_bound > T::zero()) || !upper_bound.is_finite() {
        return Err(Error::input(format!("upper bound must be positive and finite, got {upper_bound}")));
    }
    if !universe.is_empty() && upper_bound < universe.w_min() {
        return Err(Error::input(format!(
            "upper bound {upper_bound} is below the cheapest element cost {}",
            universe.w_min()
        )));
    }
    let started = Instant::now();
    let oracle = InstrumentedOracle::new(instance.oracle);
    let tau = instance.tau;

    if tau <= T::zero() {
        let value = oracle.evaluate(&[]);
        let mut solution = BicriteriaSolution::new(Vec::new(), value, universe, true);
        solution.metrics.queries = oracle.queries();
        solution.metrics.raw_queries = oracle.queries();
        solution.metrics.passes = 0;
        return Ok((solution, Vec::new()));
    }

    let two = T::lit(2.0);
    let target = usm.gamma::<T>() * (T::one() - epsilon) * tau;
    let buckets = bucket_count(epsilon);

    let mut lower: Option<T> = None;
    let mut upper_exp = ladder_ceil(epsilon, upper_bound);
    let mut certified = false;
    let mut instances: BTreeMap<i64, GuessInstance<T>> = BTreeMap::new();
    let mut empty_value: Option<T> = None;
    let mut xi: Option<T> = None;
    let mut peak = T::zero();
    let mut probes = 0u64;
    let mut per_element = Vec::with_capacity(universe.len());
    let mut stored_after = Vec::with_capacity(universe.len());
    let mut events = Vec::new();
    let mut ladder = Vec::new();

    for &u in universe.order() {
        let before = oracle.queries();
        let w = universe.cost(u);
        let fu = oracle.evaluate(&[u]);
        if fu > T::zero() {
            let ratio = w / fu;
            xi = Some(xi.map_or(ratio, |x| x.min(ratio)));
            let lowers = match lower {
                None => true,
                Some(l) => fu / w > epsilon * tau / (two * l),
            };
            if lowers {
                lower = Some(epsilon * tau * w / (two * fu));
            }
        }

        if let Some(l) = lower {
            let lo = ladder_ceil(epsilon, l);
            for exp in lo..=upper_exp {
                instances.entry(exp).or_insert_with(|| {
                    let ev = *empty_value.get_or_insert_with(|| oracle.evaluate(&[]));
                    GuessInstance { buffers: BufferSet::new(buckets, ev), usm_set: Vec::new(), usm_value: ev }
                });
            }
        }

        let mut new_upper = None;
        for (&exp, inst) in instances.range_mut(..=upper_exp) {
            let sigma = ladder_value(epsilon, exp);
            let cap = two * sigma / epsilon;
            let mut outcome = Offer::Discarded;
            if inst.buffers.all_below(cap) && w <= sigma {
                let need = w * epsilon * tau / (two * sigma);
                if let Some((j, value)) = inst.buffers.first_fit(&oracle, u, |gain| gain >= need, &mut probes) {
                    inst.buffers.admit(j, u, w, value);
                    outcome = Offer::Admitted(j + 1);
                }
            }
            if outcome != Offer::Discarded || !options.lazy_usm {
                inst.usm_set = usm.run(&oracle, inst.buffers.union())?;
                inst.usm_value = oracle.evaluate(&inst.usm_set);
            }
            if options.trace {
                events.push(AdmissionEvent { guess: exp, element: u, outcome });
            }
            if inst.best_value() >= target {
                new_upper = Some(exp);
                break;
            }
        }
        if let Some(exp) = new_upper {
            upper_exp = exp;
            certified = true;
        }
        instances.split_off(&(upper_exp + 1));

        let stored: T = instances.values().map(|i| i.buffers.total_cost()).sum();
        if stored > peak {
            peak = stored;
        }
        stored_after.push(stored);
        per_element.push(oracle.queries() - before);
        if options.record_ladder {
            ladder.push(LadderSnapshot { lower, upper_exp, live: instances.keys().copied().collect() });
        }
    }

    let pick = if certified {
        instances.get(&upper_exp).map(GuessInstance::best)
    } else {
        let mut best: Option<(Vec<ElementId>, T)> = None;
        for inst in instances.values() {
            let candidate = inst.best();
            if best.as_ref().is_none_or(|b| candidate.1 > b.1) {
                best = Some(candidate);
            }
        }
        best
    };
    let (set, value) = match pick {
        Some(p) => p,
        None => (Vec::new(), empty_value.unwrap_or_else(|| oracle.evaluate(&[]))),
    };
    let mut solution = BicriteriaSolution::new(set, value, universe, certified && value >= target);
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
    Ok((solution, ladder))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{CostedUniverse, Modular};

    fn modular_instance() -> (Modular<f64>, CostedUniverse<f64>) {
        (Modular::new(vec![3.0, 2.0, 1.0]).unwrap(), CostedUniverse::uniform(3))
    }

    #[test]
    fn hand_trace() {
        let (f, u) = modular_instance();
        let inst = CoverInstance::new(&u, &f, 5.0).unwrap();
        let opts = SingleOptions { trace: true, record_ladder: true, ..Default::default() };
        let (s, ladder) = single_with(&inst, 0.5, 3.0, &UsmAlgorithm::exact(), opts).unwrap();
        assert_eq!(s.set, vec![0, 1]);
        assert_eq!(s.value, 5.0);
        assert!(s.feasible);
        assert!((ladder[0].lower.unwrap() - 5.0 / 12.0).abs() < 1e-15);
        assert_eq!(ladder[0].upper_exp, 0);
        assert_eq!(ladder[0].live, vec![-2, -1, 0]);
        assert_eq!(ladder[2].live, vec![-2, -1, 0]);
    }

    #[test]
    fn empty_universe_is_infeasible() {
        let f = Modular::<f64>::new(vec![]).unwrap();
        let u = CostedUniverse::uniform(0);
        let inst = CoverInstance::new(&u, &f, 5.0).unwrap();
        let s = single(&inst, 0.5, 3.0, &UsmAlgorithm::exact()).unwrap();
        assert!(s.set.is_empty());
        assert!(!s.feasible);
    }

    #[test]
    fn upper_bound_below_cheapest_cost_rejected() {
        let (f, u) = modular_instance();
        let inst = CoverInstance::new(&u, &f, 5.0).unwrap();
        assert!(matches!(single(&inst, 0.5, 0.5, &UsmAlgorithm::exact()), Err(Error::Input(_))));
    }

    #[test]
    fn lazy_and_eager_usm_agree() {
        let f = Modular::new(vec![1.0, 4.0, 0.5, 2.0, 2.5, 0.2]).unwrap();
        let u = CostedUniverse::new(vec![1.0, 2.0, 1.0, 0.5, 3.0, 1.0]).unwrap();
        let inst = CoverInstance::new(&u, &f, 7.0).unwrap();
        let usm = UsmAlgorithm::random_set(5, 3);
        let eager = SingleOptions { lazy_usm: false, ..Default::default() };
        let (a, _) = single_with(&inst, 0.5, 8.0, &usm, SingleOptions::default()).unwrap();
        let (b, _) = single_with(&inst, 0.5, 8.0, &usm, eager).unwrap();
        assert_eq!(a.set, b.set);
        assert_eq!(a.value, b.value);
        assert!(b.metrics.queries >= a.metrics.queries);
    }
}
