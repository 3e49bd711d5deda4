//! Exact scalar arithmetic.
//!
//! Everything above this module is written against the [`Ring`] and [`Field`]
//! traits, so the same polynomial, rational-function and matrix code runs over
//! the rationals, the Gaussian rationals, and the rational function field
//! built on top of either.

mod gauss;
mod local;
mod poly;
mod ratfunc;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

pub use gauss::GaussRat;
pub(crate) use gauss::{fmt_rational, parse_rational};
pub use local::{cayley, cayley_of, conj_family, normalize_at, valuation, LocalGerm, ValuationError};
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Exact field. `Div` panics on a zero divisor; use [`Field::try_inv`] when the
/// divisor may vanish.
pub trait Field: Ring + Div<Output = Self> {
    fn try_inv(&self) -> Option<Self>;
}

/// Field involution (complex conjugation on coefficients, identity on the rationals).
pub trait Conjugate {
    fn conj(&self) -> Self;
}

impl Field for BigRational {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Conjugate for BigRational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

/// Coefficient fields that contain the rationals. Needed for evaluation points
/// and for parsing/serialising integers into coefficients.
pub trait RationalField: Field + Conjugate {
    fn from_rational(q: BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }
}

impl RationalField for BigRational {
    fn from_rational(q: BigRational) -> Self {
        q
    }
}
