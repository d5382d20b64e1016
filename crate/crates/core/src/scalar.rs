//! Scalar abstraction for the exact linear backend.
//!
//! Every construction in [`crate::exactla`] and above is generic over a
//! [`Scalar`], a field whose arithmetic is assumed to be *exact*: all law
//! checks in this crate are plain equality tests with no tolerance. The
//! shipped instantiation is [`crate::Rational`] (arbitrary-precision
//! rationals). Approximate types such as `f64` satisfy the bounds
//! syntactically but silently weaken every check, so they get no aliases
//! and no support here.

use std::fmt::{Debug, Display};

use num_traits::{FromPrimitive, Num, NumAssign, NumRef, Signed};

/// An exact field scalar: ring operations by value and by reference,
/// exact equality, and an embedding of the integers.
pub trait Scalar:
    Num
    + NumRef
    + NumAssign
    + Signed
    + FromPrimitive
    + Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Embeds a machine integer.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer embeds into the scalar field")
    }
}

impl<T> Scalar for T where
    T: Num
        + NumRef
        + NumAssign
        + Signed
        + FromPrimitive
        + Clone
        + PartialEq
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn rationals_are_scalars() {
        fn assert_scalar<S: Scalar>() {}
        assert_scalar::<BigRational>();
        let x = BigRational::from_int(3) / BigRational::from_int(4);
        assert_eq!(x.to_string(), "3/4");
    }

    #[test]
    fn string_round_trip() {
        use std::str::FromStr;
        for text in ["0", "5", "-7", "3/4", "-3/4", "22/7"] {
            let x = BigRational::from_str(text).unwrap();
            assert_eq!(x.to_string(), text);
        }
        // non-normalized input reduces on parse
        assert_eq!(BigRational::from_str("2/4").unwrap().to_string(), "1/2");
        assert_eq!(BigRational::from_str("1/-2").unwrap().to_string(), "-1/2");
        assert!(BigRational::from_str("1/0").is_err());
    }
}
