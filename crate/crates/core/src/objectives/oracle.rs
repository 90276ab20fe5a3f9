use std::sync::atomic::{AtomicU64, Ordering};

use crate::scalar::Scalar;

/// Index of an element of the ground set, `0..n`.
pub type ElementId = usize;

/// Value oracle for a nonnegative set function over `{0, .., n-1}`.
///
/// `evaluate` receives the members of a subset with no duplicates, in any
/// order. Implementations must be deterministic and must not cache: the
/// number of `evaluate` calls is a reported metric.
pub trait SubmodularOracle<T: Scalar>: Send + Sync {
    fn ground_size(&self) -> usize;

    fn evaluate(&self, set: &[ElementId]) -> T;
}

impl<T: Scalar, O: SubmodularOracle<T> + ?Sized> SubmodularOracle<T> for &O {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn evaluate(&self, set: &[ElementId]) -> T {
        (**self).evaluate(set)
    }
}

impl<T: Scalar, O: SubmodularOracle<T> + ?Sized> SubmodularOracle<T> for Box<O> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn evaluate(&self, set: &[ElementId]) -> T {
        (**self).evaluate(set)
    }
}

/// Wraps an oracle and counts every evaluation.
///
/// The counter is atomic so one instrumented oracle may be shared between
/// threads; the total stays exact.
pub struct InstrumentedOracle<'a, T: Scalar> {
    inner: &'a dyn SubmodularOracle<T>,
    queries: AtomicU64,
}

impl<'a, T: Scalar> InstrumentedOracle<'a, T> {
    pub fn new(inner: &'a dyn SubmodularOracle<T>) -> Self {
        Self { inner, queries: AtomicU64::new(0) }
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.queries.store(0, Ordering::Relaxed);
    }

    pub fn inner(&self) -> &'a dyn SubmodularOracle<T> {
        self.inner
    }
}

impl<T: Scalar> SubmodularOracle<T> for InstrumentedOracle<'_, T> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn evaluate(&self, set: &[ElementId]) -> T {
        self.queries.fetch_add(1, Ordering::Relaxed);
        self.inner.evaluate(set)
    }
}

/// `f(X ∪ {x}) - f(X)`, always two queries.
pub fn marginal_gain<T: Scalar>(oracle: &dyn SubmodularOracle<T>, set: &[ElementId], x: ElementId) -> T {
    let mut with = set.to_vec();
    if !with.contains(&x) {
        with.push(x);
    }
    oracle.evaluate(&with) - oracle.evaluate(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::Modular;

    #[test]
    fn marginal_gain_cases() {
        let f = Modular::new(vec![3.0f64, 2.0, 1.0]).unwrap();
        let counted = InstrumentedOracle::new(&f);
        assert_eq!(marginal_gain(&counted, &[], 2), 1.0);
        assert_eq!(marginal_gain(&counted, &[0, 2], 2), 0.0);
        assert_eq!(marginal_gain(&counted, &[1], 0), 3.0);
        assert_eq!(counted.queries(), 6);
    }

    #[test]
    fn counter_is_exact_across_threads() {
        let f = Modular::new(vec![1.0f64; 5]).unwrap();
        let counted = InstrumentedOracle::new(&f);
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    for k in 0..250 {
                        let v = counted.evaluate(&[k % 5]);
                        assert_eq!(v, 1.0);
                    }
                });
            }
        });
        assert_eq!(counted.queries(), 1000);
    }

    #[test]
    fn wrapping_preserves_values_bit_exactly() {
        let f = Modular::new(vec![0.1f64, 0.2, 0.7]).unwrap();
        let counted = InstrumentedOracle::new(&f);
        let set = [0, 1, 2];
        assert_eq!(counted.evaluate(&set).to_bits(), f.evaluate(&set).to_bits());
    }
}
