//! Laws of single and cascaded normalized gains, and their fractional moments.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::Rng;

use crate::bae::BaeModel;
use crate::error::{Error, Result};
use crate::patterns::GaussianPattern;
use crate::quad::{self, Tolerance};
use crate::real::{c, to_f64, Real};
use crate::specfun::{erf, erfcx, gamma_p_interval};

/// One additive piece of a segment density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Term<T> {
    /// `coef·x^{p−1}/√(−ln x)` with `x = Ω/shift`.
    LogSingular { coef: T, p: T, shift: T },
    /// `coef·Ω^{p−1}`.
    Power { coef: T, p: T },
    /// `coef·Ω^{p−1}·2·asin((2b−L)/L)` with `L = −ln Ω`.
    Arcsine { coef: T, p: T, b: T },
}

impl<T: Real> Term<T> {
    pub fn density(&self, omega: T) -> T {
        match *self {
            Term::LogSingular { coef, p, shift } => {
                let x = omega / shift;
                let u = -x.ln();
                if u <= T::zero() {
                    return T::infinity();
                }
                coef * x.powf(p - T::one()) / u.sqrt()
            }
            Term::Power { coef, p } => coef * omega.powf(p - T::one()),
            Term::Arcsine { coef, p, b } => {
                let l = -omega.ln();
                let arg = ((b + b - l) / l).max(-T::one()).min(T::one());
                coef * omega.powf(p - T::one()) * (arg.asin() + arg.asin())
            }
        }
    }

    /// `∫_lo^hi Ω^z·term dΩ`, closed form where one exists.
    pub fn partial_moment(&self, lo: T, hi: T, z: T) -> Result<T> {
        if hi <= lo {
            return Ok(T::zero());
        }
        match *self {
            Term::LogSingular { coef, p, shift } => {
                let k = z + p;
                let scale = coef * shift.powf(z + T::one());
                let u_hi = (-(lo / shift).ln()).max(T::zero());
                let u_lo = (-(hi / shift).ln()).max(T::zero());
                if k == T::zero() {
                    return Ok(scale * c::<T>(2.0) * (u_hi.sqrt() - u_lo.sqrt()));
                }
                // ∫ e^{−ku}u^{−1/2} du on [u_lo, u_hi], written with erfcx so
                // narrow bins far from u = 0 do not cancel.
                let x2 = hi / shift;
                let x1 = lo / shift;
                let v = x2.powf(k) * erfcx((k * u_lo).sqrt()) - x1.powf(k) * erfcx((k * u_hi).sqrt());
                Ok(scale * (T::PI() / k).sqrt() * v)
            }
            Term::Power { coef, p } => {
                let k = z + p;
                if k == T::zero() {
                    Ok(coef * (hi / lo).ln())
                } else {
                    Ok(coef * (hi.powf(k) - lo.powf(k)) / k)
                }
            }
            Term::Arcsine { .. } => self.partial_moment_quadrature(lo, hi, z),
        }
    }

    /// The same integral by quadrature, after a substitution that removes the
    /// endpoint singularity of each kind.
    pub fn partial_moment_quadrature(&self, lo: T, hi: T, z: T) -> Result<T> {
        if hi <= lo {
            return Ok(T::zero());
        }
        let tol = Tolerance::new(T::min_positive_value(), c(1e-12));
        match *self {
            Term::LogSingular { coef, p, shift } => {
                // Ω = shift·e^{−u²}
                let w1 = (-(hi / shift).ln()).max(T::zero()).sqrt();
                let w2 = (-(lo / shift).ln()).max(T::zero()).sqrt();
                let f = |w: T| {
                    let x = (-w * w).exp();
                    c::<T>(2.0) * coef * shift * x.powf(p) * (shift * x).powf(z)
                };
                Ok(quad::integrate(f, w1, w2, tol)?.value)
            }
            Term::Power { .. } | Term::Arcsine { .. } => {
                // Ω = e^{−L}
                let l1 = -hi.ln();
                let l2 = -lo.ln();
                let me = *self;
                let f = |l: T| {
                    let om = (-l).exp();
                    om * om.powf(z) * me.density(om)
                };
                Ok(quad::integrate(f, l1, l2, tol)?.value)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment<T> {
    pub lo: T,
    pub hi: T,
    pub terms: Vec<Term<T>>,
}

impl<T: Real> Segment<T> {
    pub fn density(&self, omega: T) -> T {
        if omega < self.lo || omega > self.hi {
            return T::zero();
        }
        self.terms.iter().map(|t| t.density(omega)).sum()
    }

    fn partial_moment(&self, lo: T, hi: T, z: T, by_quadrature: bool) -> Result<T> {
        let a = lo.max(self.lo);
        let b = hi.min(self.hi);
        let mut s = T::zero();
        for t in &self.terms {
            s = s + if by_quadrature { t.partial_moment_quadrature(a, b, z)? } else { t.partial_moment(a, b, z)? };
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom<T> {
    pub at: T,
    pub mass: T,
}

/// Parameters of the uniform-BAE approximate cascaded law, kept so the
/// moment has a closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformApprox<T> {
    pub p0: T,
    pub eta: T,
    pub g: T,
}

/// Mixed law on `(0, 1]`: density segments plus point masses.
#[derive(Debug, Clone, PartialEq)]
pub struct GainDistribution<T> {
    pub segments: Vec<Segment<T>>,
    pub atoms: Vec<Atom<T>>,
    pub uniform_approx: Option<UniformApprox<T>>,
}

impl<T: Real> GainDistribution<T> {
    fn atom_at_one() -> Self {
        GainDistribution { segments: vec![], atoms: vec![Atom { at: T::one(), mass: T::one() }], uniform_approx: None }
    }

    pub fn density(&self, omega: T) -> T {
        self.segments.iter().map(|s| s.density(omega)).sum()
    }

    pub fn total_mass(&self) -> Result<T> {
        let mut m: T = self.atoms.iter().map(|a| a.mass).sum();
        for s in &self.segments {
            m = m + s.partial_moment(s.lo, s.hi, T::zero(), false)?;
        }
        Ok(m)
    }

    /// `∫_lo^hi Ω^z f(Ω) dΩ` over the continuous part only.
    pub fn segment_partial_moment(&self, lo: T, hi: T, z: T) -> Result<T> {
        let mut m = T::zero();
        for s in &self.segments {
            m = m + s.partial_moment(lo, hi, z, false)?;
        }
        Ok(m)
    }

    /// `P(Ω ≤ x)`.
    pub fn cdf(&self, x: T) -> Result<T> {
        let lo = self.segments.iter().map(|s| s.lo).fold(T::infinity(), T::min);
        let mut p: T = self.atoms.iter().filter(|a| a.at <= x).map(|a| a.mass).sum();
        if lo < x {
            p = p + self.segment_partial_moment(lo, x, T::zero())?;
        }
        Ok(p)
    }

    /// CDF at each point of the increasing grid `xs`, accumulated piecewise.
    pub fn cdf_grid(&self, xs: &[T]) -> Result<Vec<T>> {
        let start = self.segments.iter().map(|s| s.lo).fold(T::infinity(), T::min).min(xs.first().copied().unwrap_or(T::zero()));
        let mut out = Vec::with_capacity(xs.len());
        let mut cont = T::zero();
        let mut prev = start;
        for &x in xs {
            if x > prev {
                cont = cont + self.segment_partial_moment(prev, x, T::zero())?;
                prev = x;
            }
            let atoms: T = self.atoms.iter().filter(|a| a.at <= x).map(|a| a.mass).sum();
            out.push(atoms + cont);
        }
        Ok(out)
    }
}

fn single_parts<T: Real>(p: &GaussianPattern<T>, model: &BaeModel<T>) -> (T, T, T) {
    // (coefficient of x^{p−1}/√(−ln x), exponent p, P0)
    let p0 = model.mainlobe_prob(p.theta0);
    match *model {
        BaeModel::TruncatedGaussian { sigma } => {
            let var = sigma * sigma;
            let e = BaeModel::truncation_mass(sigma);
            let coef = T::one() / ((T::PI() * c(2.0) * var * p.eta).sqrt() * e);
            (coef, T::one() / (c::<T>(2.0) * p.eta * var), p0)
        }
        _ => (T::one() / (c::<T>(2.0) * T::PI() * p.eta.sqrt()), T::zero(), p0),
    }
}

/// Law of one normalized gain `e^{−ηψ²}` (or `g` off the mainlobe).
pub fn single_gain_pdf<T: Real>(pattern: &GaussianPattern<T>, model: &BaeModel<T>) -> GainDistribution<T> {
    if let BaeModel::Perfect = model {
        return GainDistribution::atom_at_one();
    }
    let (coef, p, p0) = single_parts(pattern, model);
    GainDistribution {
        segments: vec![Segment { lo: pattern.g, hi: T::one(), terms: vec![Term::LogSingular { coef, p, shift: T::one() }] }],
        atoms: vec![Atom { at: pattern.g, mass: T::one() - p0 }],
        uniform_approx: None,
    }
}

/// Exact law of the product of two independent normalized gains.
pub fn cascaded_pdf_exact<T: Real>(pattern: &GaussianPattern<T>, model: &BaeModel<T>) -> GainDistribution<T> {
    if let BaeModel::Perfect = model {
        return GainDistribution::atom_at_one();
    }
    let (c1, p, p0) = single_parts(pattern, model);
    let g = pattern.g;
    let b = -g.ln();
    let q = T::one() - p0;
    GainDistribution {
        segments: vec![
            Segment {
                lo: g * g,
                hi: g,
                terms: vec![
                    Term::Arcsine { coef: c1 * c1, p, b },
                    Term::LogSingular { coef: c::<T>(2.0) * q * c1 / g, p, shift: g },
                ],
            },
            Segment { lo: g, hi: T::one(), terms: vec![Term::Power { coef: T::PI() * c1 * c1, p }] },
        ],
        atoms: vec![Atom { at: g * g, mass: q * q }],
        uniform_approx: None,
    }
}

/// Simplified cascaded laws: mainlobe-only for Gaussian BAE, and without the
/// doubly-mainlobe part below `g` for uniform BAE.
pub fn cascaded_pdf_approx<T: Real>(pattern: &GaussianPattern<T>, model: &BaeModel<T>) -> GainDistribution<T> {
    let (c1, p, p0) = single_parts(pattern, model);
    let g = pattern.g;
    match model {
        BaeModel::Perfect => GainDistribution::atom_at_one(),
        BaeModel::TruncatedGaussian { .. } => GainDistribution {
            segments: vec![Segment { lo: g, hi: T::one(), terms: vec![Term::Power { coef: T::PI() * c1 * c1, p }] }],
            atoms: vec![],
            uniform_approx: None,
        },
        BaeModel::Uniform => {
            let q = T::one() - p0;
            GainDistribution {
                segments: vec![
                    Segment { lo: g * g, hi: g, terms: vec![Term::LogSingular { coef: c::<T>(2.0) * q * c1 / g, p, shift: g }] },
                    Segment { lo: g, hi: T::one(), terms: vec![Term::Power { coef: T::PI() * c1 * c1, p }] },
                ],
                atoms: vec![Atom { at: g * g, mass: q * q }],
                uniform_approx: Some(UniformApprox { p0, eta: pattern.eta, g }),
            }
        }
    }
}

/// One draw of the cascaded normalized gain.
pub fn sample_cascaded<T: Real, R: Rng + ?Sized>(pattern: &GaussianPattern<T>, model: &BaeModel<T>, rng: &mut R) -> T {
    let a = pattern.normalized_gain_unchecked(model.sample(rng));
    let b = pattern.normalized_gain_unchecked(model.sample(rng));
    a * b
}

/// `E{Ω^z}` for the uniform approximate law, in closed form.
pub fn uniform_approx_moment<T: Real>(u: &UniformApprox<T>, z: T) -> T {
    let q = T::one() - u.p0;
    let b = -u.g.ln();
    let side = q * u.g.powf(z) * T::PI().sqrt() * erf((z * b).sqrt()) / (T::PI() * u.eta.sqrt() * z.sqrt());
    let main = -(z * u.g.ln()).exp_m1() / (c::<T>(4.0) * T::PI() * u.eta * z);
    side + main + q * q * u.g.powf(z + z)
}

/// `E{Ω^z}`; closed form for the uniform approximate law, term-wise
/// integration otherwise.
pub fn gain_moment<T: Real>(dist: &GainDistribution<T>, z: T) -> Result<T> {
    if !(z > T::zero()) {
        return Err(Error::domain("gain_moment", format!("exponent must be positive, got {z}")));
    }
    if let Some(u) = &dist.uniform_approx {
        return Ok(uniform_approx_moment(u, z));
    }
    let mut m: T = dist.atoms.iter().map(|a| a.mass * a.at.powf(z)).sum();
    for s in &dist.segments {
        m = m + s.partial_moment(s.lo, s.hi, z, false)?;
    }
    Ok(m)
}

/// `E{Ω^z}` by quadrature of every density term.
pub fn gain_moment_quadrature<T: Real>(dist: &GainDistribution<T>, z: T) -> Result<T> {
    let mut m: T = dist.atoms.iter().map(|a| a.mass * a.at.powf(z)).sum();
    for s in &dist.segments {
        m = m + s.partial_moment(s.lo, s.hi, z, true)?;
    }
    Ok(m)
}

/// `E{h^z}` for unit-mean Gamma fading of order `m`.
pub fn fading_moment<T: Real>(m: u32, z: T) -> Result<T> {
    if m == 0 || !(z >= T::zero()) {
        return Err(Error::domain("fading_moment", format!("need m >= 1 and z >= 0 (m={m}, z={z})")));
    }
    let mm: T = c(f64::from(m));
    Ok(((mm + z).lgamma() - mm.lgamma() - z * mm.ln()).exp())
}

/// `E{h^z·1{h1 ≤ h < h2}}`; `h2` may be infinite.
pub fn fading_partial_moment<T: Real>(m: u32, z: T, h1: T, h2: T) -> Result<T> {
    let mm: T = c(f64::from(m));
    Ok(fading_moment(m, z)? * gamma_p_interval(mm + z, mm * h1, mm * h2))
}

/// Memoized `χ_z = E{Ω^z}·E{h^z}` for the LOS and NLOS fading orders.
#[derive(Debug)]
pub struct MomentTable<T> {
    dist: GainDistribution<T>,
    m_los: u32,
    m_nlos: u32,
    cache: Mutex<HashMap<(bool, u64), T>>,
}

impl<T: Real> MomentTable<T> {
    pub fn new(dist: GainDistribution<T>, m_los: u32, m_nlos: u32) -> Self {
        MomentTable { dist, m_los, m_nlos, cache: Mutex::new(HashMap::new()) }
    }

    pub fn distribution(&self) -> &GainDistribution<T> {
        &self.dist
    }

    pub fn chi(&self, los: bool, z: T) -> Result<T> {
        let key = (los, to_f64(z).to_bits());
        if let Some(v) = self.cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(*v);
        }
        let m = if los { self.m_los } else { self.m_nlos };
        let v = if z == T::zero() { self.dist.total_mass()? } else { gain_moment(&self.dist, z)? * fading_moment(m, z)? };
        self.cache.lock().unwrap_or_else(|e| e.into_inner()).insert(key, v);
        Ok(v)
    }
}

/// Kolmogorov–Smirnov distance between a sample and `dist`.
///
/// The exact CDF is evaluated on a grid of sample quantiles plus the atoms,
/// so the sup is resolved to about `1/grid` in probability.
pub fn ks_distance<T: Real>(dist: &GainDistribution<T>, samples: &mut [f64], grid: usize) -> Result<f64> {
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = samples.len();
    if n == 0 {
        return Err(Error::InvalidParameter { field: "samples", msg: "empty sample".into() });
    }
    let step = (n / grid.max(1)).max(1);
    let mut xs: Vec<f64> = samples.iter().step_by(step).copied().collect();
    xs.extend(dist.atoms.iter().map(|a| to_f64(a.at)));
    xs.push(samples[n - 1]);
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    let xt: Vec<T> = xs.iter().map(|&x| c(x)).collect();
    let exact = dist.cdf_grid(&xt)?;
    let nf = n as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let le = samples.partition_point(|&s| s <= x) as f64 / nf;
        let lt = samples.partition_point(|&s| s < x) as f64 / nf;
        let f = to_f64(exact[i]);
        let jump: f64 = dist.atoms.iter().filter(|a| to_f64(a.at) == x).map(|a| to_f64(a.mass)).sum();
        d = d.max((le - f).abs()).max((lt - (f - jump)).abs());
    }
    Ok(d)
}
