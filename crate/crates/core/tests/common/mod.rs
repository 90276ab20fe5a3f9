#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subcover::objectives::{Coverage, CutGraph, Modular, Objective, SubmodularOracle, TaggedCorpus};
use subcover::Universe;

pub const TOL: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub struct Instance {
    pub kind: &'static str,
    pub f: Objective<f64>,
    pub universe: Universe,
}

impl Instance {
    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn costs(&self) -> &[f64] {
        self.universe.costs()
    }
}

pub fn modular(rng: &mut ChaCha8Rng, n: usize) -> Objective<f64> {
    Objective::Modular(Modular::new((0..n).map(|_| rng.gen_range(0.0..10.0)).collect()).unwrap())
}

pub fn coverage(rng: &mut ChaCha8Rng, n: usize) -> Objective<f64> {
    let topics = 2 * n;
    let all: Vec<u32> = (0..topics as u32).collect();
    let covers = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=4);
            all.choose_multiple(rng, k).copied().collect()
        })
        .collect();
    let weights = (0..topics).map(|_| rng.gen_range(0.5..2.0)).collect();
    Objective::Coverage(Coverage::new(covers, weights).unwrap())
}

pub fn cut(rng: &mut ChaCha8Rng, n: usize) -> Objective<f64> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.4) {
                edges.push((u, v, rng.gen_range(0.5..3.0)));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, n - 1, 1.0));
    }
    Objective::Cut(CutGraph::new(n, edges).unwrap())
}

/// Tagged corpus with a coefficient small enough that the clamp at zero
/// never fires, so the function is submodular.
pub fn diverse(rng: &mut ChaCha8Rng, n: usize) -> Objective<f64> {
    let vocab = (n as u32).max(4);
    let tags = (0..n)
        .map(|_| {
            let k = rng.gen_range(1..=3);
            (0..k).map(|_| rng.gen_range(0..vocab)).collect()
        })
        .collect();
    let gamma = 1.0 / (n * (n.max(2) - 1)) as f64;
    Objective::Diverse(TaggedCorpus::new(tags).unwrap().with_gamma(gamma).unwrap())
}

pub fn costs(rng: &mut ChaCha8Rng, n: usize) -> Universe {
    if rng.gen_bool(0.5) {
        Universe::uniform(n)
    } else {
        Universe::new((0..n).map(|_| rng.gen_range(1.0..4.0)).collect()).unwrap()
    }
}

/// Seeded instance; `kind` 0, 1, 2 selects modular, coverage, cut.
pub fn instance(seed: u64, kind: usize, n_max: usize) -> Instance {
    let mut r = rng(seed);
    let n = r.gen_range(4..=n_max);
    let (name, f) = match kind % 3 {
        0 => ("modular", modular(&mut r, n)),
        1 => ("coverage", coverage(&mut r, n)),
        _ => ("cut", cut(&mut r, n)),
    };
    Instance { kind: name, f, universe: costs(&mut r, n) }
}

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Every subset of `{0..n}` with its value and cost.
pub fn table(f: &dyn SubmodularOracle<f64>, costs: &[f64]) -> Vec<(Vec<usize>, f64, f64)> {
    let n = costs.len();
    (0..1u32 << n)
        .map(|mask| {
            let s = members(mask, n);
            let c = s.iter().map(|&i| costs[i]).sum();
            let v = f.evaluate(&s);
            (s, v, c)
        })
        .collect()
}

pub fn max_value(f: &dyn SubmodularOracle<f64>, n: usize) -> f64 {
    (0..1u32 << n).map(|m| f.evaluate(&members(m, n))).fold(f64::NEG_INFINITY, f64::max)
}

/// Minimum cost of a subset of `allowed` reaching `tau`.
pub fn min_cover(f: &dyn SubmodularOracle<f64>, costs: &[f64], allowed: &[usize], tau: f64) -> Option<f64> {
    let k = allowed.len();
    let mut best: Option<f64> = None;
    for mask in 0..1u32 << k {
        let s: Vec<usize> = members(mask, k).into_iter().map(|i| allowed[i]).collect();
        if f.evaluate(&s) >= tau {
            let c: f64 = s.iter().map(|&i| costs[i]).sum();
            best = Some(best.map_or(c, |b| b.min(c)));
        }
    }
    best
}

pub fn max_knapsack(f: &dyn SubmodularOracle<f64>, costs: &[f64], kappa: f64) -> f64 {
    let n = costs.len();
    let mut best = f.evaluate(&[]);
    for mask in 0..1u32 << n {
        let s = members(mask, n);
        let c: f64 = s.iter().map(|&i| costs[i]).sum();
        if c <= kappa {
            best = best.max(f.evaluate(&s));
        }
    }
    best
}

/// Cover instance with `tau` a random fraction of the maximum value.
pub fn cover_case(seed: u64, n_max: usize) -> (Instance, f64) {
    let inst = instance(seed, seed as usize, n_max);
    let top = max_value(&inst.f, inst.n());
    let mut r = rng(seed ^ 0x9e37_79b9);
    let tau = top * r.gen_range(0.3..=1.0);
    (inst, tau)
}

/// Knapsack instance with `kappa` between the cheapest cost and `w(U)`.
pub fn knapsack_case(seed: u64, n_max: usize) -> (Instance, f64) {
    let inst = instance(seed, seed as usize, n_max);
    let mut r = rng(seed ^ 0x7f4a_7c15);
    let lo = inst.universe.w_min();
    let hi = inst.universe.total_cost() / 2.0;
    let kappa = if hi > lo { r.gen_range(lo..=hi) } else { lo };
    (inst, kappa)
}
