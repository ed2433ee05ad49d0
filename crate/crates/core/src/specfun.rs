//! Special functions: error function, Gamma, incomplete Gamma, the Euler
//! integral for 2F1, Fox's H_{0,2}^{2,0}, and the far-field path-loss moment.

use crate::error::{Error, Result};
use crate::quad::{self, Tolerance};
use crate::real::{c, Real};

pub fn erf<T: Real>(x: T) -> T {
    x.erf()
}

pub fn erfc<T: Real>(x: T) -> T {
    x.erfc()
}

/// Scaled complementary error function `exp(x²)·erfc(x)` for `x ≥ 0`.
pub fn erfcx<T: Real>(x: T) -> T {
    if x < c(2.0) {
        return (x * x).exp() * x.erfc();
    }
    if x < c(25.0) {
        // Split x² so the rounding of the square does not leak into exp.
        let hi = x * x;
        let lo = x.mul_add(x, -hi);
        return hi.exp() * (T::one() + lo) * x.erfc();
    }
    // erfc(x) = e^{-x²}/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    let mut tail = x;
    for n in (1..=60).rev() {
        tail = x + c::<T>(n as f64 * 0.5) / tail;
    }
    T::one() / (tail * T::PI().sqrt())
}

fn is_pole<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.floor()
}

pub fn gamma<T: Real>(x: T) -> Result<T> {
    if is_pole(x) {
        return Err(Error::domain("gamma", format!("pole at {x}")));
    }
    Ok(x.tgamma())
}

pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if is_pole(x) {
        return Err(Error::domain("ln_gamma", format!("pole at {x}")));
    }
    Ok(x.lgamma())
}

/// Binomial coefficient C(t, q); zero when q > t.
pub fn binomial<T: Real>(t: u32, q: u32) -> T {
    if q > t {
        return T::zero();
    }
    let q = q.min(t - q);
    let mut acc = 1.0f64;
    for i in 1..=q {
        acc = acc * f64::from(t - q + i) / f64::from(i);
    }
    if acc < 9.0e15 {
        acc = acc.round();
    }
    c(acc)
}

/// log of `x^a e^{-x} / Γ(a)`.
fn ln_gamma_kernel<T: Real>(a: T, x: T) -> T {
    a * x.ln() - x - a.lgamma()
}

fn gamma_p_series<T: Real>(a: T, x: T) -> T {
    let mut ap = a;
    let mut del = T::one() / a;
    let mut sum = del;
    for _ in 0..1000 {
        ap = ap + T::one();
        del = del * x / ap;
        sum = sum + del;
        if del.abs() < sum.abs() * T::epsilon() {
            break;
        }
    }
    sum * ln_gamma_kernel(a, x).exp()
}

fn gamma_q_fraction<T: Real>(a: T, x: T) -> T {
    let tiny = T::min_positive_value() / T::epsilon();
    let mut b = x + T::one() - a;
    let mut cc = T::one() / tiny;
    let mut d = T::one() / b;
    let mut h = d;
    for i in 1..1000 {
        let i = c::<T>(i as f64);
        let an = -i * (i - a);
        b = b + c(2.0);
        d = an * d + b;
        if d.abs() < tiny {
            d = tiny;
        }
        cc = b + an / cc;
        if cc.abs() < tiny {
            cc = tiny;
        }
        d = T::one() / d;
        let del = d * cc;
        h = h * del;
        if (del - T::one()).abs() < T::epsilon() {
            break;
        }
    }
    (ln_gamma_kernel(a, x).exp()) * h
}

/// Regularized lower incomplete Gamma P(a, x).
pub fn gamma_p<T: Real>(a: T, x: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    if x < a + T::one() {
        gamma_p_series(a, x)
    } else {
        T::one() - gamma_q_fraction(a, x)
    }
}

/// Regularized upper incomplete Gamma Q(a, x).
pub fn gamma_q<T: Real>(a: T, x: T) -> T {
    if x <= T::zero() {
        return T::one();
    }
    if x < a + T::one() {
        T::one() - gamma_p_series(a, x)
    } else {
        gamma_q_fraction(a, x)
    }
}

/// `P(a, x2) − P(a, x1)` for `0 ≤ x1 ≤ x2 ≤ ∞`, evaluated on whichever tail
/// keeps relative accuracy.
pub fn gamma_p_interval<T: Real>(a: T, x1: T, x2: T) -> T {
    let upper = |x: T| if x == T::infinity() { T::zero() } else if x < a + T::one() { T::one() - gamma_p_series(a, x) } else { gamma_q_fraction(a, x) };
    let lower = |x: T| if x <= T::zero() { T::zero() } else if x == T::infinity() { T::one() } else if x < a + T::one() { gamma_p_series(a, x) } else { T::one() - gamma_q_fraction(a, x) };
    if x1 > a {
        upper(x1) - upper(x2)
    } else {
        lower(x2) - lower(x1)
    }
}

/// ₂F₁(a, b; 1+b; −z) through `∫₀¹ (1 + z·u^{1/b})^{−a} du`, which is the
/// Euler integral `∫₀¹ b(1+zt)^{−a} t^{b−1} dt` after `u = t^b`.
pub fn hyp2f1_euler<T: Real>(a: T, b: T, z: T) -> Result<T> {
    if !(a > T::zero() && b > T::zero() && z >= -T::one()) {
        return Err(Error::domain("hyp2f1_euler", format!("need a>0, b>0, z>=-1 (a={a}, b={b}, z={z})")));
    }
    if z == T::zero() {
        return Ok(T::one());
    }
    if z == -T::one() && a >= T::one() {
        return Err(Error::domain("hyp2f1_euler", "integral diverges at z=-1 for a>=1"));
    }
    let inv_b = T::one() / b;
    let integrand = |u: T| (T::one() + z * u.powf(inv_b)).powf(-a);
    let tol = Tolerance::new(T::min_positive_value(), c(1e-12));
    if z < T::zero() {
        // 1 + z·u^{1/b} can vanish at u = 1; u = 1 − w^k flattens that end.
        let k = if a < T::one() { (T::one() / (T::one() - a)).ceil().max(c(2.0)) } else { c(2.0) };
        let g = |w: T| {
            let wk1 = w.powf(k - T::one());
            let u = T::one() - wk1 * w;
            let base = T::one() + z * u.powf(inv_b);
            if base <= T::zero() { T::zero() } else { base.powf(-a) * k * wk1 }
        };
        return Ok(quad::integrate(g, T::zero(), T::one(), tol)?.value);
    }
    let mut points = vec![T::zero()];
    if z > T::one() {
        // knee where z·u^{1/b} = 1
        let knee = z.powf(-b);
        if knee > T::zero() && knee < T::one() {
            points.push(knee);
        }
    }
    points.push(T::one());
    Ok(quad::integrate_pieces(integrand, &points, tol)?.value)
}

/// Parameters of `H_{0,2}^{2,0}[z | (ρ,1), (0,1/α)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoxHSpec<T> {
    pub rho: T,
    pub alpha_inv: T,
    pub z: T,
}

impl<T: Real> FoxHSpec<T> {
    pub fn new(rho: T, alpha_inv: T, z: T) -> Self {
        FoxHSpec { rho, alpha_inv, z }
    }

    fn validate(&self) -> Result<()> {
        if self.z < T::zero() || self.z.is_nan() {
            return Err(Error::domain("fox_h_20_02", format!("negative argument {}", self.z)));
        }
        if !(self.rho >= c(2.0)) {
            return Err(Error::domain("fox_h_20_02", format!("rho must be >= 2, got {}", self.rho)));
        }
        if !(self.alpha_inv > T::zero() && self.alpha_inv < T::one()) {
            return Err(Error::domain("fox_h_20_02", format!("1/alpha must lie in (0,1), got {}", self.alpha_inv)));
        }
        Ok(())
    }
}

/// `E[φ(U)]` with `U ~ Gamma(ρ, 1)` and `φ(u) = exp(−(z/u)^α)`, or its
/// complement `1 − exp(−(z/u)^α)` when `complement` is set.
///
/// `H_{0,2}^{2,0}[z] = α·Γ(ρ)·E[exp(−(z/U)^α)]`, so this is the H function
/// with the Gamma prefactor stripped; it stays O(1) for large ρ.
pub fn fox_h_gamma_mean<T: Real>(rho: T, alpha: T, z: T, complement: bool) -> Result<T> {
    if z == T::zero() {
        return Ok(if complement { T::zero() } else { T::one() });
    }
    let lg = rho.lgamma();
    let rm1 = rho - T::one();
    let phi = |u: T| {
        if u <= T::zero() {
            return if complement { T::one() } else { T::zero() };
        }
        let s = (z / u).powf(alpha);
        if complement { -(-s).exp_m1() } else { (-s).exp() }
    };
    let integrand = |u: T| {
        if u <= T::zero() {
            return T::zero();
        }
        let w = (rm1 * u.ln() - u - lg).exp();
        w * phi(u)
    };
    let spread = rho.sqrt() * c(8.0);
    let mut points = vec![T::zero(), rm1, rm1 + spread];
    if rm1 - spread > T::zero() {
        points.push(rm1 - spread);
    }
    if z < rm1 + spread {
        points.push(z);
    }
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup();
    points.push(T::infinity());
    let tol = Tolerance::new(T::min_positive_value(), c(1e-12));
    Ok(quad::integrate_pieces(integrand, &points, tol)?.value)
}

/// Fox's `H_{0,2}^{2,0}[z | (ρ,1), (0,1/α)] = α·∫₀^∞ u^{ρ−1} exp(−u − z^α u^{−α}) du`.
pub fn fox_h_20_02<T: Real>(spec: FoxHSpec<T>) -> Result<T> {
    spec.validate()?;
    let alpha = T::one() / spec.alpha_inv;
    let mean = fox_h_gamma_mean(spec.rho, alpha, spec.z, false)?;
    Ok(alpha * spec.rho.tgamma() * mean)
}

/// Outcome of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum<T> {
    pub value: T,
    pub terms: usize,
    pub last_term: T,
}

/// Stop rule shared by every H-function series: the absolute term must stay
/// below `tol` for `window` consecutive terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation<T> {
    pub tol: T,
    pub window: usize,
    pub t_max: usize,
}

impl<T: Real> Default for Truncation<T> {
    fn default() -> Self {
        Truncation { tol: c(1e-10), window: 3, t_max: 60 }
    }
}

/// `H[x·y | (ρ,1),(0,1/α)] = x^ρ Σ_t (1−x)^t/t! · H[y | (t+ρ,1),(0,1/α)]`.
pub fn fox_h_scaling_series<T: Real>(x: T, y: T, rho: T, alpha: T, trunc: Truncation<T>) -> Result<SeriesSum<T>> {
    if !(x > T::zero() && x < c(2.0)) {
        return Err(Error::domain("fox_h_scaling_series", format!("expansion needs 0 < x < 2, got {x}")));
    }
    let one_minus = T::one() - x;
    let mut sum = T::zero();
    let mut quiet = 0;
    let mut last = T::zero();
    for t in 0..=trunc.t_max {
        let tt: T = c(t as f64);
        let r = rho + tt;
        // H_t / t! = α Γ(t+ρ)/t! · E[...]
        let scale = (r.lgamma() - (tt + T::one()).lgamma()).exp() * alpha;
        let term = one_minus.powi(t as i32) * scale * fox_h_gamma_mean(r, alpha, y, false)?;
        sum = sum + term;
        last = term;
        quiet = if term.abs() < trunc.tol { quiet + 1 } else { 0 };
        if quiet >= trunc.window {
            return Ok(SeriesSum { value: x.powf(rho) * sum, terms: t + 1, last_term: term });
        }
    }
    Err(Error::SeriesNonConvergence { terms: trunc.t_max + 1, last_term: last.to_f64().unwrap_or(f64::NAN), band: 0 })
}

/// `∫₁^∞ r^{1−α} e^{−βr} dr`.
pub fn far_field_moment<T: Real>(alpha: T, beta: T) -> Result<T> {
    if !(alpha > T::zero() && beta > T::zero()) {
        return Err(Error::domain("far_field_moment", format!("need alpha>0 and beta>0 (alpha={alpha}, beta={beta})")));
    }
    let p = T::one() - alpha;
    let integrand = |r: T| (p * r.ln() - beta * r).exp();
    let tol = Tolerance::new(T::min_positive_value(), c(1e-12));
    let knee = T::one() + T::one() / beta;
    let head = quad::integrate(integrand, T::one(), knee, tol)?;
    let tail = quad::integrate_to_infinity_scaled(integrand, knee, T::one() / beta, tol)?;
    Ok(head.value + tail.value)
}
