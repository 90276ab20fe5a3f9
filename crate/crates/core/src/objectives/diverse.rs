//! Diverse summarization of tagged items.
//!
//! `f(X) = |∪_{x∈X} t(x)| - γ · Σ_{x≠y ∈ X} sim(x, y)`, summed over ordered
//! pairs with the diagonal excluded so that `f({x}) = |t(x)|`. The result is
//! clamped at zero; [`TaggedCorpus::clamp_fired`] reports whether the clamp
//! was ever needed.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};

use crate::error::{Error, Result};
use crate::objectives::oracle::{ElementId, SubmodularOracle};
use crate::scalar::Scalar;

/// Pairwise similarity used by the diversity penalty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Similarity {
    /// `|t(x) ∩ t(y)| / |t(x) ∪ t(y)|`, in `[0, 1]`.
    #[default]
    Jaccard,
    /// `|t(x) ∪ t(y)| / |t(x) ∩ t(y)|`; pairs with no shared tag contribute 0.
    InverseJaccard,
}

#[derive(Debug)]
pub struct TaggedCorpus<T: Scalar> {
    tags: Vec<Vec<u32>>,
    vocabulary: usize,
    gamma_div: T,
    similarity: Similarity,
    clamped: AtomicBool,
}

impl<T: Scalar> Clone for TaggedCorpus<T> {
    fn clone(&self) -> Self {
        Self {
            tags: self.tags.clone(),
            vocabulary: self.vocabulary,
            gamma_div: self.gamma_div,
            similarity: self.similarity,
            clamped: AtomicBool::new(self.clamp_fired()),
        }
    }
}

fn overlap(a: &[u32], b: &[u32]) -> (usize, usize) {
    let (mut i, mut j, mut shared) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                shared += 1;
                i += 1;
                j += 1;
            }
        }
    }
    (shared, a.len() + b.len() - shared)
}

impl<T: Scalar> TaggedCorpus<T> {
    /// Builds a corpus with `gamma_div = 0`; tags are sorted and deduplicated.
    pub fn new(tags: Vec<Vec<u32>>) -> Result<Self> {
        let mut tags = tags;
        let mut vocabulary = 0usize;
        for (i, t) in tags.iter_mut().enumerate() {
            t.sort_unstable();
            t.dedup();
            if t.is_empty() {
                return Err(Error::input(format!("item {i} has no tags")));
            }
            vocabulary = vocabulary.max(*t.last().unwrap() as usize + 1);
        }
        Ok(Self { tags, vocabulary, gamma_div: T::zero(), similarity: Similarity::Jaccard, clamped: AtomicBool::new(false) })
    }

    pub fn with_gamma(mut self, gamma_div: T) -> Result<Self> {
        if !(gamma_div >= T::zero()) || !gamma_div.is_finite() {
            return Err(Error::input(format!("diversity coefficient must be finite and >= 0, got {gamma_div}")));
        }
        self.gamma_div = gamma_div;
        Ok(self)
    }

    pub fn with_similarity(mut self, similarity: Similarity) -> Self {
        self.similarity = similarity;
        self
    }

    /// Sets the coefficient to [`default_gamma_div`](Self::default_gamma_div).
    pub fn with_default_gamma(self) -> Self {
        let g = self.default_gamma_div();
        self.with_gamma(g).expect("default coefficient is finite")
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn tags(&self, item: ElementId) -> &[u32] {
        &self.tags[item]
    }

    pub fn gamma_div(&self) -> T {
        self.gamma_div
    }

    pub fn similarity_kind(&self) -> Similarity {
        self.similarity
    }

    pub fn similarity(&self, x: ElementId, y: ElementId) -> T {
        let (shared, union) = overlap(&self.tags[x], &self.tags[y]);
        if shared == 0 {
            return T::zero();
        }
        match self.similarity {
            Similarity::Jaccard => T::from_count(shared) / T::from_count(union),
            Similarity::InverseJaccard => T::from_count(union) / T::from_count(shared),
        }
    }

    /// True once any evaluation had to clamp a negative value to zero.
    pub fn clamp_fired(&self) -> bool {
        self.clamped.load(Ordering::Relaxed)
    }

    /// Unclamped objective value.
    pub fn raw_value(&self, set: &[ElementId]) -> T {
        let mut hit = vec![false; self.vocabulary];
        let mut covered = 0usize;
        for &x in set {
            for &t in &self.tags[x] {
                if !hit[t as usize] {
                    hit[t as usize] = true;
                    covered += 1;
                }
            }
        }
        let mut penalty = T::zero();
        if self.gamma_div > T::zero() {
            for (i, &x) in set.iter().enumerate() {
                for &y in &set[i + 1..] {
                    penalty += self.similarity(x, y);
                }
            }
            // both orientations of every unordered pair
            penalty = penalty + penalty;
        }
        T::from_count(covered) - self.gamma_div * penalty
    }

    /// Checked evaluation.
    pub fn summary_value(&self, set: &[ElementId]) -> Result<T> {
        if let Some(&x) = set.iter().find(|&&x| x >= self.tags.len()) {
            return Err(Error::input(format!("unknown item {x}")));
        }
        Ok(self.evaluate(set))
    }

    /// `|∪_{x∈U} t(x)| / Σ_{x≠y∈U} sim(x, y)`, or 0 when no two items share
    /// a tag. Only pairs sharing a tag are visited.
    pub fn default_gamma_div(&self) -> T {
        let mut by_tag: HashMap<u32, Vec<usize>> = HashMap::new();
        for (i, t) in self.tags.iter().enumerate() {
            for &tag in t {
                by_tag.entry(tag).or_default().push(i);
            }
        }
        let universe_tags = by_tag.len();
        let mut denominator = T::zero();
        let mut stamp = vec![usize::MAX; self.tags.len()];
        for x in 0..self.tags.len() {
            for tag in &self.tags[x] {
                for &y in &by_tag[tag] {
                    if y > x && stamp[y] != x {
                        stamp[y] = x;
                        denominator += self.similarity(x, y);
                    }
                }
            }
        }
        denominator = denominator + denominator;
        if denominator > T::zero() {
            T::from_count(universe_tags) / denominator
        } else {
            T::zero()
        }
    }
}

impl<T: Scalar> SubmodularOracle<T> for TaggedCorpus<T> {
    fn ground_size(&self) -> usize {
        self.tags.len()
    }

    fn evaluate(&self, set: &[ElementId]) -> T {
        let v = self.raw_value(set);
        if v < T::zero() {
            self.clamped.store(true, Ordering::Relaxed);
            T::zero()
        } else {
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_singleton() {
        let c = TaggedCorpus::<f64>::new(vec![vec![1, 2, 3], vec![3, 4]]).unwrap().with_gamma(0.7).unwrap();
        assert_eq!(c.summary_value(&[]).unwrap(), 0.0);
        assert_eq!(c.summary_value(&[0]).unwrap(), 3.0);
        assert_eq!(c.summary_value(&[1]).unwrap(), 2.0);
    }

    #[test]
    fn identical_tag_sets_ordered_pairs() {
        let c = TaggedCorpus::<f64>::new(vec![vec![0, 1, 2], vec![0, 1, 2]]).unwrap().with_gamma(1.0).unwrap();
        assert_eq!(c.summary_value(&[0, 1]).unwrap(), 1.0);
        assert!(!c.clamp_fired());
    }

    #[test]
    fn clamps_and_flags_negative_values() {
        let c = TaggedCorpus::<f64>::new(vec![vec![0], vec![0], vec![0]]).unwrap().with_gamma(1.0).unwrap();
        assert_eq!(c.raw_value(&[0, 1, 2]), 1.0 - 6.0);
        assert_eq!(c.evaluate(&[0, 1, 2]), 0.0);
        assert!(c.clamp_fired());
    }

    #[test]
    fn default_gamma_examples() {
        let same = TaggedCorpus::<f64>::new(vec![vec![0, 1, 2]; 4]).unwrap();
        assert!((same.default_gamma_div() - 3.0 / 12.0).abs() < 1e-12);
        let disjoint = TaggedCorpus::<f64>::new(vec![vec![0], vec![1], vec![2, 3]]).unwrap();
        assert_eq!(disjoint.default_gamma_div(), 0.0);
        let pair = TaggedCorpus::<f64>::new(vec![vec![1, 2], vec![2, 3]]).unwrap();
        assert!((pair.default_gamma_div() - 4.5).abs() < 1e-12);
    }

    #[test]
    fn default_gamma_matches_all_pairs_scan() {
        let tags = vec![vec![0, 1], vec![1, 2, 3], vec![4], vec![0, 4, 5], vec![2, 3]];
        let c = TaggedCorpus::<f64>::new(tags).unwrap();
        let mut denom = 0.0;
        for x in 0..c.len() {
            for y in 0..c.len() {
                if x != y {
                    denom += c.similarity(x, y);
                }
            }
        }
        assert!((c.default_gamma_div() - 6.0 / denom).abs() < 1e-12);
    }

    #[test]
    fn inverse_jaccard_switch() {
        let c = TaggedCorpus::<f64>::new(vec![vec![1, 2], vec![2, 3], vec![9]])
            .unwrap()
            .with_similarity(Similarity::InverseJaccard);
        assert_eq!(c.similarity(0, 1), 3.0);
        assert_eq!(c.similarity(0, 2), 0.0);
    }

    #[test]
    fn unknown_item_is_an_error() {
        let c = TaggedCorpus::<f64>::new(vec![vec![1]]).unwrap();
        assert!(c.summary_value(&[1]).is_err());
    }

    #[test]
    fn empty_tag_set_rejected() {
        assert!(TaggedCorpus::<f64>::new(vec![vec![1], vec![]]).is_err());
    }
}
