//! Scalar abstraction for the numeric core.
//!
//! Everything downstream (grids, transforms, norms) is generic over a real
//! scalar implementing [`Real`]; complex data is `num_complex::Complex<T>`.
//! `f64` is the working type for anything with a stated tolerance — see the
//! aliases at the crate root — while `f32` exists to keep the core honest
//! about not baking in a width.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar the core is generic over.
pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

/// Converts an `f64` constant into `T`, panicking only for non-finite inputs
/// that the caller should never produce.
#[inline]
pub fn real<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 constant must convert into the scalar type")
}

/// Converts a `usize` (rep dimensions, node counts) into `T`.
#[inline]
pub fn real_from_usize<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("usize must convert into the scalar type")
}

/// Lossy view of a `T` as `f64`, used at reporting/serialization boundaries.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().expect("scalar must convert to f64")
}

/// Unit complex number `exp(i * angle)`.
#[inline]
pub fn unit_phase<T: Real>(angle: T) -> Complex<T> {
    let (s, c) = angle.sin_cos();
    Complex::new(c, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_is_on_unit_circle() {
        let z: Complex<f64> = unit_phase(0.7318);
        assert!((z.norm() - 1.0).abs() < 1e-15);
        assert!((z.arg() - 0.7318).abs() < 1e-15);
    }

    #[test]
    fn conversions_round_trip_for_f32() {
        let x: f32 = real(0.25);
        assert_eq!(x, 0.25f32);
        assert_eq!(to_f64(x), 0.25);
    }
}
