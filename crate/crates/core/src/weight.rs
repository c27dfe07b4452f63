//! Spill costs.
//!
//! Every solver is generic over the cost scalar. Exact comparisons are only
//! guaranteed for exact types (integers, [`Rational`](crate::Rational)); `f64`
//! works for experimentation but optimality ties are then subject to rounding.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_traits::Signed;

/// Scalar used for variable weights and spill costs.
pub trait Weight: Signed + PartialOrd + Clone + Debug + Display + Send + Sync + 'static {
    /// Total order used by the solvers. Incomparable values (NaN) compare equal.
    fn weight_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }

    fn from_count(n: usize) -> Self {
        let mut acc = Self::zero();
        for _ in 0..n {
            acc = acc + Self::one();
        }
        acc
    }
}

impl<T> Weight for T where T: Signed + PartialOrd + Clone + Debug + Display + Send + Sync + 'static {}

/// Sum of a sequence of weights.
pub fn total<'a, W: Weight>(weights: impl IntoIterator<Item = &'a W>) -> W {
    weights
        .into_iter()
        .fold(W::zero(), |acc, w| acc + w.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn count_and_sum() {
        assert_eq!(<i64 as Weight>::from_count(4), 4);
        let ws = [Rational::new(1, 2), Rational::new(1, 3)];
        assert_eq!(total(&ws), Rational::new(5, 6));
        assert_eq!(Weight::weight_cmp(&1.5f64, &f64::NAN), Ordering::Equal);
    }
}
