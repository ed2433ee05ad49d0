use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Scalar type the numerical core is written against.
///
/// On top of `num_traits::Float` it carries the handful of special functions
/// that have no portable `std` implementation.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    fn erf(self) -> Self;
    fn erfc(self) -> Self;
    fn tgamma(self) -> Self;
    fn lgamma(self) -> Self;
}

impl Real for f64 {
    fn erf(self) -> Self {
        libm::erf(self)
    }
    fn erfc(self) -> Self {
        libm::erfc(self)
    }
    fn tgamma(self) -> Self {
        libm::tgamma(self)
    }
    fn lgamma(self) -> Self {
        libm::lgamma_r(self).0
    }
}

impl Real for f32 {
    fn erf(self) -> Self {
        libm::erff(self)
    }
    fn erfc(self) -> Self {
        libm::erfcf(self)
    }
    fn tgamma(self) -> Self {
        libm::tgammaf(self)
    }
    fn lgamma(self) -> Self {
        libm::lgammaf_r(self).0
    }
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn c<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in T")
}

/// Converts `T` back into `f64` (lossless for f32/f64).
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
