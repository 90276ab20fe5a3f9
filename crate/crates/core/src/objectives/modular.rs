use crate::error::{Error, Result};
use crate::objectives::oracle::{ElementId, SubmodularOracle};
use crate::scalar::Scalar;

/// `f(X) = Σ_{x∈X} v(x)` with `v ≥ 0`.
#[derive(Debug, Clone)]
pub struct Modular<T: Scalar> {
    values: Vec<T>,
}

impl<T: Scalar> Modular<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(**v >= T::zero()) || !v.is_finite()) {
            return Err(Error::input(format!("modular value for element {i} is {v}, expected a finite value >= 0")));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

impl<T: Scalar> SubmodularOracle<T> for Modular<T> {
    fn ground_size(&self) -> usize {
        self.values.len()
    }

    fn evaluate(&self, set: &[ElementId]) -> T {
        set.iter().map(|&e| self.values[e]).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_values() {
        let f = Modular::new(vec![3.0f64, 2.0, 1.0]).unwrap();
        assert_eq!(f.evaluate(&[0, 2]), 4.0);
        assert_eq!(f.evaluate(&[]), 0.0);
        assert_eq!(f.evaluate(&[0, 1, 2]), 6.0);
    }

    #[test]
    fn rejects_negative() {
        assert!(Modular::new(vec![1.0f64, -0.5]).is_err());
    }
}
