//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }

    /// Conversion from a small integer index.
    #[inline]
    fn from_index(n: usize) -> Self {
        Self::from_usize(n).expect("index representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Nearest integer to `x` if `x` lies within `tol` of it.
pub fn near_integer<T: Real>(x: T, tol: T) -> Option<i64> {
    let rounded = x.round();
    if (x - rounded).abs() <= tol {
        rounded.to_i64()
    } else {
        None
    }
}

/// Nearest non-positive integer to `z` if `z` is within `tol` of one.
pub(crate) fn near_nonpositive_integer<T: Real>(z: Complex<T>, tol: T) -> Option<u64> {
    if z.im.abs() > tol {
        return None;
    }
    match near_integer(z.re, tol) {
        Some(n) if n <= 0 => Some(n.unsigned_abs()),
        _ => None,
    }
}

pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}
