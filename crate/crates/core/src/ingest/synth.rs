//! Seeded instance generators. All randomness comes from `ChaCha8Rng`
//! seeded with `seed_from_u64`, sampled through fixed-width integer and
//! `f64` draws, so instances are identical on every platform.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::objectives::{Coverage, CutGraph, Modular};
use crate::scalar::Scalar;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::input("instance size must be at least 1"));
    }
    Ok(())
}

/// Erdős–Rényi graph: each unordered pair is an edge with probability `p`.
pub fn er_graph<T: Scalar>(n: usize, p: f64, seed: u64) -> Result<CutGraph<T>> {
    check_n(n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("edge probability must lie in [0, 1], got {p}")));
    }
    let mut rng = rng(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                pairs.push((u, v));
            }
        }
    }
    CutGraph::unweighted(n, &pairs)
}

/// Coverage instance: element `i` covers between 1 and `max_tags` distinct
/// topics drawn uniformly from `topics`.
pub fn coverage<T: Scalar>(n: usize, topics: usize, max_tags: usize, seed: u64) -> Result<Coverage<T>> {
    check_n(n)?;
    if topics == 0 || max_tags == 0 || topics > u32::MAX as usize {
        return Err(Error::input("coverage needs at least one topic and one tag per element"));
    }
    let max_tags = max_tags.min(topics);
    let mut rng = rng(seed);
    let all: Vec<u32> = (0..topics as u32).collect();
    let covers = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=max_tags as u32) as usize;
            let mut pick: Vec<u32> = all.choose_multiple(&mut rng, k).copied().collect();
            pick.sort_unstable();
            pick
        })
        .collect();
    Coverage::unweighted(covers, topics)
}

/// The descending fixture `[n, n-1, .., 1]`.
pub fn modular_fixture<T: Scalar>(n: usize) -> Result<Modular<T>> {
    check_n(n)?;
    Modular::new((0..n).map(|i| T::from_count(n - i)).collect())
}

/// Modular values drawn uniformly from `[0, max)`.
pub fn random_modular<T: Scalar>(n: usize, max: f64, seed: u64) -> Result<Modular<T>> {
    check_n(n)?;
    let mut rng = rng(seed);
    Modular::new((0..n).map(|_| T::lit(rng.gen::<f64>() * max)).collect())
}

/// Costs drawn uniformly from `[lo, hi)`.
pub fn random_costs<T: Scalar>(n: usize, lo: f64, hi: f64, seed: u64) -> Result<Vec<T>> {
    if !(lo > 0.0) || !(hi >= lo) || !hi.is_finite() {
        return Err(Error::input(format!("cost range must satisfy 0 < lo <= hi, got [{lo}, {hi})")));
    }
    let mut rng = rng(seed);
    Ok((0..n).map(|_| T::lit(lo + rng.gen::<f64>() * (hi - lo))).collect())
}
