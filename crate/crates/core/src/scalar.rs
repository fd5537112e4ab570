//! Scalar abstraction for the numeric core.
//!
//! All operator math is generic over the real field backing the complex
//! entries, so the same code runs on `f32` and `f64`. Concrete `f64`
//! aliases live at the crate root.

use num_traits::{FromPrimitive, ToPrimitive};

/// Real scalar type usable as the base field of operator entries.
pub trait Scalar: nalgebra::RealField + FromPrimitive + ToPrimitive + Copy {}

impl<T> Scalar for T where T: nalgebra::RealField + FromPrimitive + ToPrimitive + Copy {}

/// Convert an `f64` literal into the working scalar type.
pub(crate) fn real<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Lossy view of a scalar as `f64`, for error payloads and reports.
pub(crate) fn as_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
