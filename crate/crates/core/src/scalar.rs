//! Scalar types the closed forms can be evaluated in.
//!
//! Results are reported in [`Probability`](crate::Probability); `f64` and
//! fixed-width rationals are supported for cross-checks and display.

use std::fmt::Debug;

use num_traits::{FromPrimitive, Num};

pub trait Scalar: Num + Clone + FromPrimitive + Debug {}

impl<T> Scalar for T where T: Num + Clone + FromPrimitive + Debug {}

pub fn from_u64<T: Scalar>(v: u64) -> T {
    T::from_u64(v).expect("integer representable in scalar type")
}

pub fn from_i64<T: Scalar>(v: i64) -> T {
    T::from_i64(v).expect("integer representable in scalar type")
}

pub fn powi<T: Scalar>(base: &T, exp: u32) -> T {
    num_traits::pow(base.clone(), exp as usize)
}
