//! Unconstrained submodular maximization subroutines.
//!
//! Every routine works on an explicit candidate list `S` and returns a subset
//! of it. [`UsmAlgorithm`] bundles a routine with its repetition count and
//! seed, reports its approximation ratio γ and the closed-form query count
//! `T(m)` used by the bound reporter.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::objectives::{ElementId, SubmodularOracle};
use crate::scalar::Scalar;

/// Largest candidate list accepted by [`exact_usm`].
pub const EXACT_LIMIT: usize = 20;

/// Repetitions used for randomized subroutines unless configured otherwise.
pub const DEFAULT_REPETITIONS: usize = 50;

/// Local-search improvement parameter used by default.
pub const DEFAULT_LOCAL_SEARCH_EPS: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UsmKind {
    /// Randomized double greedy, best of `R` runs.
    DoubleGreedy,
    /// Deterministic double greedy.
    DeterministicDoubleGreedy,
    /// Best of `R` uniformly random subsets.
    RandomSet,
    /// Deterministic add/remove local search.
    LocalSearch,
    /// Exhaustive search, for tests on small inputs.
    Exact,
}

impl UsmKind {
    pub fn label(self) -> &'static str {
        match self {
            UsmKind::DoubleGreedy => "dg",
            UsmKind::DeterministicDoubleGreedy => "dg-det",
            UsmKind::RandomSet => "rs",
            UsmKind::LocalSearch => "ls",
            UsmKind::Exact => "exact",
        }
    }
}

impl fmt::Display for UsmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for UsmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dg" => Ok(UsmKind::DoubleGreedy),
            "dg-det" => Ok(UsmKind::DeterministicDoubleGreedy),
            "rs" => Ok(UsmKind::RandomSet),
            "ls" => Ok(UsmKind::LocalSearch),
            "exact" => Ok(UsmKind::Exact),
            other => Err(Error::Config(format!("unknown USM routine '{other}' (expected dg, dg-det, rs, ls or exact)"))),
        }
    }
}

/// A configured USM subroutine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UsmAlgorithm {
    pub kind: UsmKind,
    /// Runs per call for the randomized routines; ignored otherwise.
    pub repetitions: usize,
    pub seed: u64,
    pub local_search_eps: f64,
}

impl UsmAlgorithm {
    pub fn new(kind: UsmKind) -> Self {
        Self { kind, repetitions: DEFAULT_REPETITIONS, seed: 0, local_search_eps: DEFAULT_LOCAL_SEARCH_EPS }
    }

    pub fn exact() -> Self {
        Self::new(UsmKind::Exact)
    }

    pub fn deterministic_double_greedy() -> Self {
        Self::new(UsmKind::DeterministicDoubleGreedy)
    }

    pub fn double_greedy(repetitions: usize, seed: u64) -> Self {
        Self { repetitions, seed, ..Self::new(UsmKind::DoubleGreedy) }
    }

    pub fn random_set(repetitions: usize, seed: u64) -> Self {
        Self { repetitions, seed, ..Self::new(UsmKind::RandomSet) }
    }

    pub fn local_search(eps: f64) -> Self {
        Self { local_search_eps: eps, ..Self::new(UsmKind::LocalSearch) }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_repetitions(mut self, repetitions: usize) -> Self {
        self.repetitions = repetitions;
        self
    }

    /// Single-run ratio used in the stopping rules.
    pub fn gamma<T: Scalar>(&self) -> T {
        match self.kind {
            UsmKind::DoubleGreedy => T::lit(0.5),
            UsmKind::DeterministicDoubleGreedy | UsmKind::LocalSearch => T::one() / T::lit(3.0),
            UsmKind::RandomSet => T::lit(0.25),
            UsmKind::Exact => T::one(),
        }
    }

    fn reps(&self) -> usize {
        self.repetitions.max(1)
    }

    /// Worst-case oracle queries `T(m)` on a candidate list of size `m`.
    pub fn query_bound(&self, m: usize) -> f64 {
        if m == 0 {
            return 0.0;
        }
        let mf = m as f64;
        match self.kind {
            UsmKind::DoubleGreedy => 4.0 * mf * self.reps() as f64,
            UsmKind::DeterministicDoubleGreedy => 4.0 * mf,
            UsmKind::RandomSet => self.reps() as f64,
            UsmKind::LocalSearch => {
                let delta = self.local_search_eps / (mf * mf);
                let steps = (mf.ln() / delta.ln_1p()).ceil();
                2.0 + mf + (steps + 2.0) * mf
            }
            UsmKind::Exact => 2f64.powi(m as i32),
        }
    }

    pub fn run<T: Scalar>(&self, oracle: &dyn SubmodularOracle<T>, candidates: &[ElementId]) -> Result<Vec<ElementId>> {
        match self.kind {
            UsmKind::DoubleGreedy => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                let mut best: Option<(Vec<ElementId>, T)> = None;
                for _ in 0..self.reps() {
                    let (set, value) = double_greedy_pass(oracle, candidates, Some(&mut rng));
                    if best.as_ref().is_none_or(|(_, v)| value > *v) {
                        best = Some((set, value));
                    }
                }
                Ok(best.map(|(s, _)| s).unwrap_or_default())
            }
            UsmKind::DeterministicDoubleGreedy => Ok(double_greedy_pass(oracle, candidates, None).0),
            UsmKind::RandomSet => Ok(random_set(oracle, candidates, self.reps(), self.seed)),
            UsmKind::LocalSearch => local_search(oracle, candidates, T::lit(self.local_search_eps)),
            UsmKind::Exact => exact_usm(oracle, candidates),
        }
    }
}

impl fmt::Display for UsmAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)
    }
}

fn members<'a>(candidates: &'a [ElementId], mask: &'a [bool]) -> impl Iterator<Item = ElementId> + 'a {
    candidates.iter().zip(mask).filter(|(_, &keep)| keep).map(|(&e, _)| e)
}

/// One pass of double greedy; returns the set and its value.
///
/// Makes exactly `4m` queries for `m >= 1`: `f(X∪{u})`, `f(X)`, `f(Y∖{u})`
/// and `f(Y)` per element, in list order.
fn double_greedy_pass<T: Scalar>(
    oracle: &dyn SubmodularOracle<T>,
    candidates: &[ElementId],
    mut rng: Option<&mut ChaCha8Rng>,
) -> (Vec<ElementId>, T) {
    if candidates.is_empty() {
        return (Vec::new(), T::zero());
    }
    let mut x: Vec<ElementId> = Vec::new();
    let mut in_y = vec![true; candidates.len()];
    let mut last = T::zero();
    for (i, &u) in candidates.iter().enumerate() {
        let y: Vec<ElementId> = members(candidates, &in_y).collect();
        let y_minus: Vec<ElementId> = y.iter().copied().filter(|&e| e != u).collect();
        let mut x_plus = x.clone();
        x_plus.push(u);

        let f_x_plus = oracle.evaluate(&x_plus);
        let f_x = oracle.evaluate(&x);
        let f_y_minus = oracle.evaluate(&y_minus);
        let f_y = oracle.evaluate(&y);
        let gain_add = f_x_plus - f_x;
        let gain_remove = f_y_minus - f_y;

        let add = match rng.as_deref_mut() {
            None => gain_add > gain_remove,
            Some(rng) => {
                let a = gain_add.max(T::zero());
                let b = gain_remove.max(T::zero());
                let total = a + b;
                if total <= T::zero() {
                    true
                } else {
                    rng.gen::<f64>() < (a / total).as_f64()
                }
            }
        };
        if add {
            x = x_plus;
            last = f_x_plus;
        } else {
            in_y[i] = false;
            last = f_y_minus;
        }
    }
    (x, last)
}

/// Double greedy over `candidates` in list order.
///
/// The deterministic variant adds `u` when the gain of adding beats the gain
/// of removing it from the upper set (ties reject). The randomized variant
/// adds with probability proportional to the positive parts.
pub fn double_greedy<T: Scalar>(
    oracle: &dyn SubmodularOracle<T>,
    candidates: &[ElementId],
    randomized: bool,
    seed: u64,
) -> Vec<ElementId> {
    if randomized {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        double_greedy_pass(oracle, candidates, Some(&mut rng)).0
    } else {
        double_greedy_pass(oracle, candidates, None).0
    }
}

/// Best of `repetitions` subsets that include each candidate with
/// probability 1/2. One query per sample; ties keep the earlier sample.
pub fn random_set<T: Scalar>(
    oracle: &dyn SubmodularOracle<T>,
    candidates: &[ElementId],
    repetitions: usize,
    seed: u64,
) -> Vec<ElementId> {
    if candidates.is_empty() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(Vec<ElementId>, T)> = None;
    for _ in 0..repetitions.max(1) {
        let sample: Vec<ElementId> = candidates.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let value = oracle.evaluate(&sample);
        if best.as_ref().is_none_or(|(_, v)| value > *v) {
            best = Some((sample, value));
        }
    }
    best.map(|(s, _)| s).unwrap_or_default()
}

/// Add/remove local search to a `(1 + eps/m²)`-approximate local optimum,
/// started from the best singleton; returns the better of the local optimum
/// and its complement within `candidates`.
pub fn local_search<T: Scalar>(
    oracle: &dyn SubmodularOracle<T>,
    candidates: &[ElementId],
    eps: T,
) -> Result<Vec<ElementId>> {
    if !(eps > T::zero() && eps < T::one()) {
        return Err(Error::input(format!("local search parameter must lie in (0, 1), got {eps}")));
    }
    let m = candidates.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let step = T::one() + eps / T::from_count(m * m);

    let mut in_x = vec![false; m];
    let mut current = oracle.evaluate(&[]);
    let mut start = None;
    for (i, &e) in candidates.iter().enumerate() {
        let v = oracle.evaluate(&[e]);
        if v > current {
            current = v;
            start = Some(i);
        }
    }
    if let Some(i) = start {
        in_x[i] = true;
    }

    loop {
        let mut moved = false;
        for flip_in in [true, false] {
            for i in 0..m {
                if in_x[i] == flip_in {
                    continue;
                }
                in_x[i] = flip_in;
                let trial: Vec<ElementId> = members(candidates, &in_x).collect();
                let v = oracle.evaluate(&trial);
                if v > step * current {
                    current = v;
                    moved = true;
                    break;
                }
                in_x[i] = !flip_in;
            }
            if moved {
                break;
            }
        }
        if !moved {
            break;
        }
    }

    let local: Vec<ElementId> = members(candidates, &in_x).collect();
    let complement_mask: Vec<bool> = in_x.iter().map(|b| !b).collect();
    let complement: Vec<ElementId> = members(candidates, &complement_mask).collect();
    if oracle.evaluate(&complement) > current {
        Ok(complement)
    } else {
        Ok(local)
    }
}

fn lex_less(a: &[ElementId], b: &[ElementId]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a < b
}

/// Exhaustive maximizer over all subsets of `candidates`; ties go to the
/// lexicographically smallest sorted id list.
pub fn exact_usm<T: Scalar>(oracle: &dyn SubmodularOracle<T>, candidates: &[ElementId]) -> Result<Vec<ElementId>> {
    let m = candidates.len();
    if m > EXACT_LIMIT {
        return Err(Error::TooLarge { size: m, limit: EXACT_LIMIT });
    }
    let mut best: Vec<ElementId> = Vec::new();
    let mut best_value = T::neg_infinity();
    let mut set = Vec::with_capacity(m);
    for mask in 0u32..(1u32 << m) {
        set.clear();
        set.extend((0..m).filter(|i| mask >> i & 1 == 1).map(|i| candidates[i]));
        let v = oracle.evaluate(&set);
        if v > best_value || (v == best_value && lex_less(&set, &best)) {
            best_value = v;
            best.clone_from(&set);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{CutGraph, InstrumentedOracle, Modular};

    fn modular() -> Modular<f64> {
        Modular::new(vec![3.0, 2.0, 1.0]).unwrap()
    }

    fn triangle() -> CutGraph<f64> {
        CutGraph::unweighted(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn sorted(mut v: Vec<ElementId>) -> Vec<ElementId> {
        v.sort_unstable();
        v
    }

    #[test]
    fn double_greedy_takes_every_positive_modular_element() {
        let f = modular();
        for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            assert_eq!(sorted(double_greedy(&f, &order, false, 0)), vec![0, 1, 2]);
            assert_eq!(sorted(double_greedy(&f, &order, true, 9)), vec![0, 1, 2]);
        }
    }

    #[test]
    fn empty_candidates() {
        let f = modular();
        assert!(double_greedy(&f, &[], false, 0).is_empty());
        assert!(random_set(&f, &[], 5, 0).is_empty());
        assert!(local_search(&f, &[], 0.25).unwrap().is_empty());
        assert!(exact_usm(&f, &[]).unwrap().is_empty());
    }

    #[test]
    fn deterministic_double_greedy_on_triangle() {
        let g = triangle();
        let s = double_greedy(&g, &[0, 1, 2], false, 0);
        assert!(g.evaluate(&s) >= 2.0 / 3.0);
    }

    #[test]
    fn double_greedy_query_count() {
        let g = triangle();
        let counted = InstrumentedOracle::new(&g);
        double_greedy(&counted, &[0, 1, 2], false, 0);
        assert_eq!(counted.queries(), 12);
        counted.reset();
        UsmAlgorithm::double_greedy(5, 1).run(&counted, &[0, 1, 2]).unwrap();
        assert_eq!(counted.queries() as f64, UsmAlgorithm::double_greedy(5, 1).query_bound(3));
    }

    #[test]
    fn random_set_is_reproducible_and_counts() {
        let f = modular();
        let counted = InstrumentedOracle::new(&f);
        let a = random_set(&counted, &[0, 1, 2], 1, 42);
        let b = random_set(&counted, &[0, 1, 2], 1, 42);
        assert_eq!(a, b);
        assert_eq!(counted.queries(), 2);
        counted.reset();
        random_set(&counted, &[0, 1, 2], 7, 3);
        assert_eq!(counted.queries(), 7);
    }

    #[test]
    fn local_search_cases() {
        let f = Modular::new(vec![3.0, 0.0, 2.0, 1.0, 0.0]).unwrap();
        assert_eq!(sorted(local_search(&f, &[0, 1, 2, 3, 4], 0.25).unwrap()), vec![0, 2, 3]);
        let g = triangle();
        let s = local_search(&g, &[0, 1, 2], 0.25).unwrap();
        assert_eq!(g.evaluate(&s), 2.0);
        assert!(local_search(&g, &[0], 1.5).is_err());
    }

    #[test]
    fn local_search_respects_query_bound() {
        let g = CutGraph::<f64>::unweighted(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)]).unwrap();
        let counted = InstrumentedOracle::new(&g);
        let usm = UsmAlgorithm::local_search(0.25);
        usm.run(&counted, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(counted.queries() as f64 <= usm.query_bound(6));
    }

    #[test]
    fn exact_cases() {
        let f = modular();
        assert_eq!(sorted(exact_usm(&f, &[0, 1, 2]).unwrap()), vec![0, 1, 2]);
        let g = triangle();
        let s = exact_usm(&g, &[0, 1, 2]).unwrap();
        assert_eq!(s, vec![0]);
        assert_eq!(g.evaluate(&s), 2.0);
        let big: Vec<ElementId> = (0..21).collect();
        let z = Modular::new(vec![0.0f64; 21]).unwrap();
        assert!(matches!(exact_usm(&z, &big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn gammas() {
        assert_eq!(UsmAlgorithm::exact().gamma::<f64>(), 1.0);
        assert_eq!(UsmAlgorithm::double_greedy(50, 0).gamma::<f64>(), 0.5);
        assert_eq!(UsmAlgorithm::random_set(50, 0).gamma::<f64>(), 0.25);
        assert!((UsmAlgorithm::local_search(0.25).gamma::<f64>() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn kind_parsing() {
        for k in ["dg", "dg-det", "rs", "ls", "exact"] {
            assert_eq!(k.parse::<UsmKind>().unwrap().label(), k);
        }
        assert!("greedy".parse::<UsmKind>().is_err());
    }
}
