//! Scalar abstraction for the float-valued parts of the library.

use std::fmt::Debug;

/// Floating-point scalar for weights, potentials and log-log fits.
///
/// Implemented by `f32` and `f64` through the blanket impl.
pub trait Float: num_traits::Float + num_traits::FromPrimitive + Debug {}

impl<T> Float for T where T: num_traits::Float + num_traits::FromPrimitive + Debug {}
