//! Coefficient traits.
//!
//! Every polynomial in the crate is generic over a [`Scalar`]. The cohomology
//! computations instantiate it with exact rationals (see [`crate::Rational`]),
//! while the integer sub-case `Z[y]` uses [`num_bigint::BigInt`]. Floating
//! point types satisfy the bounds as well, but nothing in the crate relies on
//! inexact arithmetic.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed};

/// A commutative ring of coefficients.
pub trait Scalar: Num + Signed + Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    /// Embed a machine integer.
    fn from_i64(value: i64) -> Self;
}

/// A [`Scalar`] in which every nonzero element is invertible.
///
/// Exact elimination is only offered over fields.
pub trait Field: Scalar {}

impl Scalar for BigInt {
    fn from_i64(value: i64) -> Self {
        BigInt::from(value)
    }
}

impl Scalar for i64 {
    fn from_i64(value: i64) -> Self {
        value
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Display + Send + Sync + From<i64> + 'static,
{
    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(T::from(value))
    }
}

impl<T> Field for Ratio<T> where T: Clone + Integer + Signed + Debug + Display + Send + Sync + From<i64> + 'static {}

impl Scalar for f64 {
    fn from_i64(value: i64) -> Self {
        value as f64
    }
}

impl Field for f64 {}

impl Scalar for f32 {
    fn from_i64(value: i64) -> Self {
        value as f32
    }
}

impl Field for f32 {}
