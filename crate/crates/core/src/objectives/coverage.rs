use crate::error::{Error, Result};
use crate::objectives::oracle::{ElementId, SubmodularOracle};
use crate::scalar::Scalar;

/// Weighted set coverage: each element covers a set of topics and `f(X)` is
/// the total weight of topics covered by at least one member of `X`.
#[derive(Debug, Clone)]
pub struct Coverage<T: Scalar> {
    covers: Vec<Vec<u32>>,
    topic_weights: Vec<T>,
}

impl<T: Scalar> Coverage<T> {
    pub fn new(covers: Vec<Vec<u32>>, topic_weights: Vec<T>) -> Result<Self> {
        if topic_weights.iter().any(|w| !(*w >= T::zero()) || !w.is_finite()) {
            return Err(Error::input("topic weights must be finite and nonnegative"));
        }
        for (i, c) in covers.iter().enumerate() {
            if let Some(t) = c.iter().find(|&&t| t as usize >= topic_weights.len()) {
                return Err(Error::input(format!("element {i} covers unknown topic {t}")));
            }
        }
        Ok(Self { covers, topic_weights })
    }

    /// Unit weight per topic.
    pub fn unweighted(covers: Vec<Vec<u32>>, topics: usize) -> Result<Self> {
        Self::new(covers, vec![T::one(); topics])
    }
}

impl<T: Scalar> SubmodularOracle<T> for Coverage<T> {
    fn ground_size(&self) -> usize {
        self.covers.len()
    }

    fn evaluate(&self, set: &[ElementId]) -> T {
        let mut hit = vec![false; self.topic_weights.len()];
        let mut total = T::zero();
        for &e in set {
            for &t in &self.covers[e] {
                let t = t as usize;
                if !hit[t] {
                    hit[t] = true;
                    total += self.topic_weights[t];
                }
            }
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_union() {
        let f = Coverage::<f64>::unweighted(vec![vec![0, 1], vec![1, 2], vec![3]], 4).unwrap();
        assert_eq!(f.evaluate(&[]), 0.0);
        assert_eq!(f.evaluate(&[0, 1]), 3.0);
        assert_eq!(f.evaluate(&[0, 1, 2]), 4.0);
    }

    #[test]
    fn unknown_topic_rejected() {
        assert!(Coverage::<f64>::unweighted(vec![vec![5]], 2).is_err());
    }
}
