//! Brute-force reference solvers for small instances.
//!
//! Every subset is evaluated from scratch on its ascending member list, so
//! the binary-order and Gray-code sweeps see bit-identical values and agree
//! exactly under the smallest-bitmask tie-break.

use crate::cover::CoverInstance;
use crate::error::{Error, Result};
use crate::kcsm::KcsmInstance;
use crate::objectives::{CostedUniverse, ElementId, SubmodularOracle};
use crate::scalar::Scalar;

/// Largest ground set the enumerators accept.
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactAnswer<T: Scalar> {
    /// Optimal set, ascending (empty when infeasible).
    pub set: Vec<ElementId>,
    pub value: T,
    pub cost: T,
    /// Subsets evaluated; `2^n` for a full sweep.
    pub enumerated: u64,
    pub feasible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepOrder {
    Binary,
    Gray,
}

fn guard(n: usize) -> Result<()> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::TooLarge { size: n, limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

fn members(mask: u64, n: usize) -> Vec<ElementId> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn masks(n: usize, order: SweepOrder) -> impl Iterator<Item = u64> {
    (0..1u64 << n).map(move |k| match order {
        SweepOrder::Binary => k,
        SweepOrder::Gray => k ^ (k >> 1),
    })
}

/// Scans all subsets and keeps the best under `better(candidate, incumbent)`
/// on `(value, cost)`, breaking exact ties toward the smaller bitmask.
fn sweep<T: Scalar>(
    oracle: &dyn SubmodularOracle<T>,
    universe: &CostedUniverse<T>,
    order: SweepOrder,
    admissible: impl Fn(T, T) -> bool,
    better: impl Fn((T, T), (T, T)) -> Option<bool>,
) -> Result<ExactAnswer<T>> {
    let n = universe.len();
    guard(n)?;
    let mut best: Option<(u64, T, T)> = None;
    let mut enumerated = 0u64;
    for mask in masks(n, order) {
        enumerated += 1;
        let set = members(mask, n);
        let cost = universe.cost_of(&set);
        let value = oracle.evaluate(&set);
        if !admissible(value, cost) {
            continue;
        }
        let replace = match &best {
            None => true,
            Some((bm, bv, bc)) => better((value, cost), (*bv, *bc)).unwrap_or(mask < *bm),
        };
        if replace {
            best = Some((mask, value, cost));
        }
    }
    Ok(match best {
        Some((mask, value, cost)) => ExactAnswer { set: members(mask, n), value, cost, enumerated, feasible: true },
        None => ExactAnswer { set: Vec::new(), value: oracle.evaluate(&[]), cost: T::zero(), enumerated, feasible: false },
    })
}

fn strict<T: Scalar>(a: T, b: T, prefer_smaller: bool) -> Option<bool> {
    if a == b {
        None
    } else {
        Some((a < b) == prefer_smaller)
    }
}

/// Minimum-cost set with `f(X) >= τ`.
pub fn exact_sc_opt<T: Scalar>(instance: &CoverInstance<'_, T>) -> Result<ExactAnswer<T>> {
    exact_sc_opt_in(instance, SweepOrder::Binary)
}

pub fn exact_sc_opt_in<T: Scalar>(instance: &CoverInstance<'_, T>, order: SweepOrder) -> Result<ExactAnswer<T>> {
    let tau = instance.tau;
    sweep(instance.oracle, instance.universe, order, |v, _| v >= tau, |(_, c), (_, bc)| strict(c, bc, true))
}

/// Maximum-value set with `w(X) <= κ`.
pub fn exact_kcsm_opt<T: Scalar>(instance: &KcsmInstance<'_, T>) -> Result<ExactAnswer<T>> {
    exact_kcsm_opt_in(instance, SweepOrder::Binary)
}

pub fn exact_kcsm_opt_in<T: Scalar>(instance: &KcsmInstance<'_, T>, order: SweepOrder) -> Result<ExactAnswer<T>> {
    let kappa = instance.kappa;
    sweep(instance.oracle, instance.universe, order, |_, c| c <= kappa, |(v, _), (bv, _)| strict(v, bv, false))
}

fn union(a: &[ElementId], b: &[ElementId]) -> Vec<ElementId> {
    let mut out: Vec<ElementId> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn check_parts<T: Scalar>(oracle: &dyn SubmodularOracle<T>, parts: &[Vec<ElementId>], b: &[ElementId]) -> Result<()> {
    if parts.is_empty() {
        return Err(Error::input("at least one part is required"));
    }
    let n = oracle.ground_size();
    let mut seen = vec![false; n];
    for part in parts {
        for &x in part {
            if x >= n {
                return Err(Error::input(format!("element {x} is outside the ground set of size {n}")));
            }
            if seen[x] {
                return Err(Error::input(format!("element {x} appears in more than one part")));
            }
            seen[x] = true;
        }
    }
    if let Some(&x) = b.iter().find(|&&x| x >= n) {
        return Err(Error::input(format!("element {x} is outside the ground set of size {n}")));
    }
    Ok(())
}

/// Mean of `f(A_i ∪ B)` over the parts, and `(1 - 1/m)·f(B)`.
///
/// For nonnegative submodular `f` and disjoint parts the mean is at least
/// the second value.
pub fn partition_average<T: Scalar>(
    oracle: &dyn SubmodularOracle<T>,
    parts: &[Vec<ElementId>],
    b: &[ElementId],
) -> Result<(T, T)> {
    check_parts(oracle, parts, b)?;
    let m = T::from_count(parts.len());
    let total: T = parts.iter().map(|a| oracle.evaluate(&union(a, b))).sum();
    let base = oracle.evaluate(&union(&[], b));
    Ok((total / m, (T::one() - T::one() / m) * base))
}

/// Whether `max_i f(A_i ∪ B) >= (1 - 1/m)·f(B) - 1e-9`.
pub fn check_claim1<T: Scalar>(oracle: &dyn SubmodularOracle<T>, parts: &[Vec<ElementId>], b: &[ElementId]) -> Result<bool> {
    check_parts(oracle, parts, b)?;
    let m = T::from_count(parts.len());
    let best = parts.iter().map(|a| oracle.evaluate(&union(a, b))).fold(T::neg_infinity(), T::max);
    let rhs = (T::one() - T::one() / m) * oracle.evaluate(&union(&[], b));
    Ok(best >= rhs - T::lit(1e-9))
}
