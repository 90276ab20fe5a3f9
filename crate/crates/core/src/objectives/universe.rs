use crate::error::{Error, Result};
use crate::objectives::oracle::ElementId;
use crate::scalar::Scalar;

/// Ground set with positive costs and a stream order.
#[derive(Debug, Clone)]
pub struct CostedUniverse<T: Scalar> {
    order: Vec<ElementId>,
    costs: Vec<T>,
    w_min: T,
    w_max: T,
}

impl<T: Scalar> CostedUniverse<T> {
    /// Elements stream in index order.
    pub fn new(costs: Vec<T>) -> Result<Self> {
        let order = (0..costs.len()).collect();
        Self::with_order(costs, order)
    }

    pub fn uniform(n: usize) -> Self {
        Self::new(vec![T::one(); n]).expect("unit costs are valid")
    }

    pub fn with_order(costs: Vec<T>, order: Vec<ElementId>) -> Result<Self> {
        for (id, &c) in costs.iter().enumerate() {
            if !(c > T::zero()) || !c.is_finite() {
                return Err(Error::input(format!("element {id} has non-positive or non-finite cost {c}")));
            }
        }
        let mut seen = vec![false; costs.len()];
        for &e in &order {
            if e >= costs.len() || seen[e] {
                return Err(Error::input(format!("stream order is not a permutation (element {e})")));
            }
            seen[e] = true;
        }
        if order.len() != costs.len() {
            return Err(Error::input("stream order must list every element once"));
        }
        let w_min = costs.iter().copied().fold(T::infinity(), T::min);
        let w_max = costs.iter().copied().fold(T::zero(), T::max);
        Ok(Self { order, costs, w_min, w_max })
    }

    pub fn len(&self) -> usize {
        self.costs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.costs.is_empty()
    }

    /// Elements in stream order.
    pub fn order(&self) -> &[ElementId] {
        &self.order
    }

    pub fn cost(&self, e: ElementId) -> T {
        self.costs[e]
    }

    pub fn costs(&self) -> &[T] {
        &self.costs
    }

    /// `w(X)`.
    pub fn cost_of(&self, set: &[ElementId]) -> T {
        set.iter().map(|&e| self.costs[e]).sum()
    }

    pub fn total_cost(&self) -> T {
        self.costs.iter().copied().sum()
    }

    /// Smallest cost; `+inf` for an empty universe.
    pub fn w_min(&self) -> T {
        self.w_min
    }

    pub fn w_max(&self) -> T {
        self.w_max
    }
}
