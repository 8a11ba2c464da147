//! Scalar abstraction for lengths, distances, demand and flow values.
//!
//! The verification side of the toolkit works in exact arithmetic
//! (`Rational64`, `BigRational`, and the radical extension used by the
//! exponential demand); floating point appears only inside the approximate
//! routing solver and in reports.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64, Ratio};
use num_traits::{Num, Signed, ToPrimitive};

pub trait Scalar:
    Clone + PartialEq + PartialOrd + Debug + Display + Num + Neg<Output = Self>
{
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    fn from_u64(v: u64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn to_f64_lossy(&self) -> f64;

    /// Total order used by searches and reports. For floats this is IEEE
    /// `total_cmp`; exact types use their natural order.
    fn total_cmp(&self, other: &Self) -> Ordering;

    fn is_positive_s(&self) -> bool {
        self.total_cmp(&Self::zero()) == Ordering::Greater
    }

    fn min_s(self, other: Self) -> Self {
        if self.total_cmp(&other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    fn max_s(self, other: Self) -> Self {
        if self.total_cmp(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_u64(v: u64) -> Self {
        v as f32
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f32 / den as f32
    }

    fn to_f64_lossy(&self) -> f64 {
        *self as f64
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        f32::total_cmp(self, other)
    }
}

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn from_u64(v: u64) -> Self {
        Ratio::from_integer(v as i64)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        Ord::cmp(self, other)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_u64(v: u64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        Ord::cmp(self, other)
    }
}

/// Widen a `Rational64` into a `BigRational`.
pub fn big(r: Rational64) -> BigRational {
    Ratio::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Exact conversion of an f64 into a `BigRational`. Every finite f64 is a
/// dyadic rational, so this never loses information.
pub fn big_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn is_non_negative<S: Signed>(x: &S) -> bool {
    !x.is_negative()
}
