use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Numeric type the objective is evaluated in.
///
/// Anything ordered that supports field arithmetic works; `f64` is the
/// workhorse and `Ratio<i64>` gives exact answers on small instances.
pub trait Scalar:
    Num
    + Copy
    + PartialOrd
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion used by statistics and reporting.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Conversion from an `f64` literal, panicking on values the type cannot hold.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("literal not representable in scalar type")
    }
}

impl<T> Scalar for T where
    T: Num
        + Copy
        + PartialOrd
        + Debug
        + Display
        + FromPrimitive
        + ToPrimitive
        + Sum
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn rational_is_a_scalar() {
        let half = Rational::lit(0.5);
        assert_eq!(half, Rational::new(1, 2));
        assert_eq!(half.to_f64_lossy(), 0.5);
    }
}
