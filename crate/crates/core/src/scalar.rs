//! Scalar abstraction shared by the numeric code.
//!
//! Ratios of counts (compression ratios, NCD, N_S, Dice, event probabilities)
//! are generic over [`Scalar`], so they can be evaluated exactly with
//! [`Rational`](crate::Rational) or approximately with `f32`/`f64`.
//! Log-based measures (NGD, metric M) need [`RealScalar`].

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{Float, Num, Signed};

/// A number type the similarity code can compute with.
pub trait Scalar: Num + Signed + Copy + PartialOrd + Debug + Display + Send + Sync + 'static {
    /// `num / den` in this scalar type. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn to_f64(self) -> f64;

    fn is_finite(self) -> bool {
        true
    }

    fn from_count(count: u64) -> Self {
        Self::from_ratio(count_to_i64(count), 1)
    }
}

/// Scalars that support logarithms.
pub trait RealScalar: Scalar + Float {}

impl<T: Scalar + Float> RealScalar for T {}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }

    fn from_count(count: u64) -> Self {
        count as f64
    }
}

impl Scalar for f32 {
    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn to_f64(self) -> f64 {
        f64::from(self)
    }

    fn is_finite(self) -> bool {
        f32::is_finite(self)
    }

    fn from_count(count: u64) -> Self {
        count as f32
    }
}

impl Scalar for Ratio<i64> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn to_f64(self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

// Counts above i64::MAX are rejected when `HitCounts` are built; compressed
// lengths never get near it.
pub(crate) fn count_to_i64(count: u64) -> i64 {
    i64::try_from(count).expect("count exceeds i64::MAX")
}

/// Formats a value with the fixed six-decimal display used by every report.
pub fn display6<T: Scalar>(value: T) -> String {
    format!("{:.6}", value.to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn rational_is_exact() {
        let a = Rational::from_ratio(34, 40);
        let b = Rational::from_ratio(22, 40);
        assert_eq!(a - b, Rational::new(3, 10));
    }

    #[test]
    fn float_ratio_matches_literal() {
        assert_eq!(f64::from_ratio(11, 100), 0.11);
        assert_eq!(f64::from_ratio(89, 100), 0.89);
    }

    #[test]
    fn six_decimals() {
        assert_eq!(display6(Rational::new(-2, 34)), "-0.058824");
        assert_eq!(display6(10.0f64 / 34.0), "0.294118");
    }
}
