//! Coefficient scalar abstraction for the series ring.
//!
//! Everything in [`crate::series`] is generic over [`Coeff`]; the concrete
//! instantiation used by the verification code is the crate-root alias
//! [`crate::Rat`] (arbitrary-precision rationals), which keeps every
//! comparison exact. The bounds are chosen so that any num-traits field-like
//! scalar (including `f64`, should anyone want approximate evaluation) works.

use std::fmt::{Debug, Display};
use std::ops::{Div, Neg, Sub};

use num::traits::FromPrimitive;
use num::{One, Zero};

/// Scalar type usable as a series coefficient.
pub trait Coeff:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + FromPrimitive
{
    /// Embeds a small non-negative integer exactly.
    fn from_int(v: usize) -> Self {
        Self::from_usize(v).expect("integer does not embed into the coefficient ring")
    }

    /// `1 / v` for a small positive integer `v`.
    fn inv_int(v: usize) -> Self {
        Self::one() / Self::from_int(v)
    }
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Debug
        + Display
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Div<Output = T>
        + FromPrimitive
{
}
