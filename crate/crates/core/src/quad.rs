//! Adaptive Gauss–Kronrod (G10/K21) quadrature.

use crate::error::{Error, Result};
use crate::real::{c, to_f64, Real};

const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208980529191,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

const MAX_INTERVALS: usize = 4000;

/// Absolute/relative error target. A result is accepted once
/// `error <= max(abs, rel * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance<T> {
    pub abs: T,
    pub rel: T,
}

impl<T: Real> Tolerance<T> {
    pub fn new(abs: T, rel: T) -> Self {
        // f32 cannot reach the f64 defaults, so the floor tracks the type.
        let floor = T::epsilon() * c(50.0);
        Tolerance { abs, rel: rel.max(floor) }
    }

    fn target(&self, value: T) -> T {
        self.abs.max(self.rel * value.abs())
    }
}

impl<T: Real> Default for Tolerance<T> {
    fn default() -> Self {
        Tolerance::new(c(1e-10), c(1e-8))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
    pub evals: usize,
}

#[derive(Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn gk21<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> Panel<T> {
    let half = (b - a) * c(0.5);
    let mid = (a + b) * c(0.5);
    let fc = f(mid);
    let mut res_k = fc * c(WGK[10]);
    let mut res_g = T::zero();
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half * c(XGK[j]);
        let f1 = f(mid - dx);
        let f2 = f(mid + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w: T = c(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + c::<T>(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * c(0.5);
    let mut res_asc = c::<T>(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + c::<T>(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let h = half.abs();
    let value = res_k * half;
    res_abs = res_abs * h;
    res_asc = res_asc * h;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != T::zero() && error != T::zero() {
        let r = (error * c(200.0) / res_asc).powf(c(1.5));
        error = res_asc * r.min(T::one());
    }
    let floor = T::epsilon() * c(50.0) * res_abs;
    if res_abs > T::min_positive_value() / (T::epsilon() * c(50.0)) {
        error = error.max(floor);
    }
    Panel { a, b, value, error }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<T, F>(mut f: F, a: T, b: T, tol: Tolerance<T>) -> Result<Estimate<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integrate", "interval endpoints must be finite"));
    }
    if a == b {
        return Ok(Estimate { value: T::zero(), error: T::zero(), evals: 0 });
    }
    let mut panels = vec![gk21(&mut f, a, b)];
    let mut evals = 21;
    loop {
        let value: T = panels.iter().map(|p| p.value).sum();
        let error: T = panels.iter().map(|p| p.error).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Quadrature { value: to_f64(value), error: to_f64(error), requested: to_f64(tol.target(value)) });
        }
        if error <= tol.target(value) {
            return Ok(Estimate { value, error, evals });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(bi, be), (i, p)| if p.error > be { (i, p.error) } else { (bi, be) });
        let p = panels[worst];
        let m = (p.a + p.b) * c(0.5);
        let too_narrow = (p.b - p.a).abs() <= T::epsilon() * c(100.0) * m.abs().max(T::min_positive_value());
        if panels.len() >= MAX_INTERVALS || too_narrow {
            return Err(Error::Quadrature { value: to_f64(value), error: to_f64(error), requested: to_f64(tol.target(value)) });
        }
        panels[worst] = gk21(&mut f, p.a, m);
        panels.push(gk21(&mut f, m, p.b));
        evals += 42;
    }
}

/// Integrates `f` over `[a, ∞)` through the map `x = a + t/(1 - t)`.
pub fn integrate_to_infinity<T, F>(f: F, a: T, tol: Tolerance<T>) -> Result<Estimate<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    integrate_to_infinity_scaled(f, a, T::one(), tol)
}

/// Same as [`integrate_to_infinity`] with `x = a + scale·t/(1 - t)`; pick
/// `scale` near the decay length of `f`.
pub fn integrate_to_infinity_scaled<T, F>(mut f: F, a: T, scale: T, tol: Tolerance<T>) -> Result<Estimate<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let one = T::one();
    integrate(
        |t: T| {
            let s = one - t;
            if s <= T::zero() {
                return T::zero();
            }
            let v = f(a + scale * t / s) * scale / (s * s);
            if v.is_finite() { v } else { T::zero() }
        },
        T::zero(),
        one,
        tol,
    )
}

/// Integrates over consecutive breakpoints; a final `+∞` breakpoint is allowed.
/// The tolerance is applied to each piece.
pub fn integrate_pieces<T, F>(mut f: F, points: &[T], tol: Tolerance<T>) -> Result<Estimate<T>>
where
    T: Real,
    F: FnMut(T) -> T,
{
    let mut total = Estimate { value: T::zero(), error: T::zero(), evals: 0 };
    for w in points.windows(2) {
        let e = if w[1] == T::infinity() {
            integrate_to_infinity(&mut f, w[0], tol)?
        } else {
            integrate(&mut f, w[0], w[1], tol)?
        };
        total.value = total.value + e.value;
        total.error = total.error + e.error;
        total.evals += e.evals;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let e = integrate(|x: f64| x.powi(7) - 3.0 * x * x, 0.0, 2.0, Tolerance::default()).unwrap();
        assert!((e.value - (32.0 - 8.0)).abs() < 1e-12);
        assert_eq!(e.evals, 21);
    }

    #[test]
    fn endpoint_singularity() {
        let e = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, Tolerance::new(1e-12, 1e-10)).unwrap();
        assert!((e.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn semi_infinite() {
        let e = integrate_to_infinity(|x: f64| (-x).exp(), 0.0, Tolerance::default()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-10);
        let e = integrate_to_infinity(|x: f64| 1.0 / (1.0 + x * x), 0.0, Tolerance::default()).unwrap();
        assert!((e.value - std::f64::consts::FRAC_PI_2).abs() < 1e-8);
    }

    #[test]
    fn f32_works() {
        let e = integrate(|x: f32| x.sin(), 0.0, std::f32::consts::PI, Tolerance::default()).unwrap();
        assert!((e.value - 2.0).abs() < 1e-5);
    }

    #[test]
    fn divergent_integral_is_rejected() {
        let r = integrate(|x: f64| 1.0 / x, 0.0, 1.0, Tolerance::default());
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
