//! `f64` wrapper whose `erf` is off by 1e−3. Used by `selftest
//! --inject-erf-fault` to show the oracle suite notices a broken primitive.

use std::fmt;
use std::iter::Sum;
use std::num::FpCategory;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use mmwpt::Real;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumCast, One, ToPrimitive, Zero};

pub const ERF_SHIFT: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct ErfFault(pub f64);

impl fmt::Display for ErfFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! binop {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for ErfFault {
            type Output = ErfFault;
            #[inline]
            fn $m(self, o: ErfFault) -> ErfFault { ErfFault(self.0.$m(o.0)) }
        }
    )*};
}
binop!(Add add, Sub sub, Mul mul, Div div, Rem rem);

impl Neg for ErfFault {
    type Output = ErfFault;
    fn neg(self) -> ErfFault {
        ErfFault(-self.0)
    }
}

impl Sum for ErfFault {
    fn sum<I: Iterator<Item = ErfFault>>(it: I) -> ErfFault {
        ErfFault(it.map(|x| x.0).sum())
    }
}

impl Zero for ErfFault {
    fn zero() -> Self {
        ErfFault(0.0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }
}

impl One for ErfFault {
    fn one() -> Self {
        ErfFault(1.0)
    }
}

impl Num for ErfFault {
    type FromStrRadixErr = <f64 as Num>::FromStrRadixErr;
    fn from_str_radix(s: &str, r: u32) -> Result<Self, Self::FromStrRadixErr> {
        f64::from_str_radix(s, r).map(ErfFault)
    }
}

impl ToPrimitive for ErfFault {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }
    fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
    fn to_f64(&self) -> Option<f64> {
        Some(self.0)
    }
}

impl NumCast for ErfFault {
    fn from<N: ToPrimitive>(n: N) -> Option<Self> {
        n.to_f64().map(ErfFault)
    }
}

impl FromPrimitive for ErfFault {
    fn from_i64(n: i64) -> Option<Self> {
        Some(ErfFault(n as f64))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(ErfFault(n as f64))
    }
    fn from_f64(n: f64) -> Option<Self> {
        Some(ErfFault(n))
    }
}

macro_rules! consts {
    ($($name:ident),*) => {$(
        fn $name() -> Self { ErfFault(<f64 as FloatConst>::$name()) }
    )*};
}

impl FloatConst for ErfFault {
    consts!(E, FRAC_1_PI, FRAC_1_SQRT_2, FRAC_2_PI, FRAC_2_SQRT_PI, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, FRAC_PI_8, LN_10, LN_2, LOG10_E, LOG2_E, PI, SQRT_2);
}

macro_rules! unary {
    ($($m:ident),*) => {$( #[inline] fn $m(self) -> Self { ErfFault(self.0.$m()) } )*};
}
macro_rules! pred {
    ($($m:ident),*) => {$( fn $m(self) -> bool { self.0.$m() } )*};
}
macro_rules! ctor {
    ($($m:ident),*) => {$( fn $m() -> Self { ErfFault(<f64 as Float>::$m()) } )*};
}

impl Float for ErfFault {
    ctor!(nan, infinity, neg_infinity, neg_zero, min_value, min_positive_value, max_value, epsilon);
    pred!(is_nan, is_infinite, is_finite, is_normal, is_sign_positive, is_sign_negative);
    unary!(floor, ceil, round, trunc, fract, abs, signum, recip, sqrt, exp, exp2, ln, log2, log10, cbrt, sin, cos, tan, asin, acos, atan, exp_m1, ln_1p, sinh, cosh, tanh, asinh, acosh, atanh);

    fn classify(self) -> FpCategory {
        self.0.classify()
    }
    fn mul_add(self, a: Self, b: Self) -> Self {
        ErfFault(self.0.mul_add(a.0, b.0))
    }
    fn powi(self, n: i32) -> Self {
        ErfFault(self.0.powi(n))
    }
    fn powf(self, n: Self) -> Self {
        ErfFault(self.0.powf(n.0))
    }
    fn log(self, b: Self) -> Self {
        ErfFault(self.0.log(b.0))
    }
    fn max(self, o: Self) -> Self {
        ErfFault(self.0.max(o.0))
    }
    fn min(self, o: Self) -> Self {
        ErfFault(self.0.min(o.0))
    }
    #[allow(deprecated)]
    fn abs_sub(self, o: Self) -> Self {
        ErfFault((self.0 - o.0).max(0.0))
    }
    fn hypot(self, o: Self) -> Self {
        ErfFault(self.0.hypot(o.0))
    }
    fn atan2(self, o: Self) -> Self {
        ErfFault(self.0.atan2(o.0))
    }
    fn sin_cos(self) -> (Self, Self) {
        let (s, c) = self.0.sin_cos();
        (ErfFault(s), ErfFault(c))
    }
    fn integer_decode(self) -> (u64, i16, i8) {
        Float::integer_decode(self.0)
    }
}

impl Real for ErfFault {
    fn erf(self) -> Self {
        ErfFault(Real::erf(self.0) + ERF_SHIFT)
    }
    fn erfc(self) -> Self {
        ErfFault(Real::erfc(self.0) - ERF_SHIFT)
    }
    fn tgamma(self) -> Self {
        ErfFault(Real::tgamma(self.0))
    }
    fn lgamma(self) -> Self {
        ErfFault(Real::lgamma(self.0))
    }
}
