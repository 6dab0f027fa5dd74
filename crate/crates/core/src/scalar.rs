//! Scalar abstraction shared by the operator algebra.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst};

/// Real scalar the operator algebra is generic over (`f32` or `f64`).
pub trait Real: Float + FloatConst + Debug + Display + Default + Send + Sync + 'static {
    /// Converts an `f64` literal. All constants in this crate are representable.
    #[inline]
    fn lit(x: f64) -> Self {
        <Self as num_traits::NumCast>::from(x).expect("literal representable in scalar type")
    }

    /// Tolerance for Hermiticity checks: `1e-12`, or a few hundred ulps for
    /// scalars too coarse to resolve that.
    fn hermitian_tol() -> Self {
        Self::lit(1e-12).max(Self::epsilon() * Self::lit(256.0))
    }

    /// Frobenius tolerance for `U†U = I`.
    fn unitary_tol() -> Self {
        Self::lit(1e-10).max(Self::epsilon() * Self::lit(256.0))
    }

    fn to_f64(self) -> f64 {
        <Self as num_traits::ToPrimitive>::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Reduces an angle into `(-π, π]`.
pub fn wrap_angle<T: Real>(angle: T) -> T {
    let two_pi = T::TAU();
    let mut a = angle % two_pi;
    if a <= -T::PI() {
        a = a + two_pi;
    } else if a > T::PI() {
        a = a - two_pi;
    }
    a
}

/// Reduces an angle into `[0, 2π)`.
pub fn wrap_positive<T: Real>(angle: T) -> T {
    let two_pi = T::TAU();
    let a = angle % two_pi;
    if a < T::zero() {
        a + two_pi
    } else {
        a
    }
}
