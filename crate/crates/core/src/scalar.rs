//! Scalar abstraction shared by every objective and algorithm.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point type used for objective values, costs and thresholds.
///
/// Implemented for `f32` and `f64`. Closed-form bounds need `ln`, so exact
/// rational types are not supported.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal, panicking only if the target type cannot
    /// represent a finite approximation of it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// `(1 + eps)^exp`, the canonical value of a guess stored by exponent.
pub fn ladder_value<T: Scalar>(eps: T, exp: i64) -> T {
    let base = T::one() + eps;
    base.powi(exp as i32)
}

/// Smallest exponent `i` with `(1 + eps)^i >= x`, for `x > 0`.
pub fn ladder_ceil<T: Scalar>(eps: T, x: T) -> i64 {
    let guess = (x.ln() / (T::one() + eps).ln()).ceil();
    let mut i = guess.to_i64().unwrap_or(0);
    while ladder_value(eps, i - 1) >= x {
        i -= 1;
    }
    while ladder_value(eps, i) < x {
        i += 1;
    }
    i
}

/// Largest exponent `i` with `(1 + eps)^i <= x`, for `x > 0`.
pub fn ladder_floor<T: Scalar>(eps: T, x: T) -> i64 {
    let guess = (x.ln() / (T::one() + eps).ln()).floor();
    let mut i = guess.to_i64().unwrap_or(0);
    while ladder_value(eps, i + 1) <= x {
        i += 1;
    }
    while ladder_value(eps, i) > x {
        i -= 1;
    }
    i
}

/// Number of buffers used by the streaming filter: `ceil(2 / eps)`.
pub fn bucket_count<T: Scalar>(eps: T) -> usize {
    let b = (T::lit(2.0) / eps).ceil().to_usize().unwrap_or(2);
    b.max(2)
}
