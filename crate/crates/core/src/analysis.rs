//! Analytic coverage probability, average harvested energy and REL.

use std::collections::BTreeMap;

use crate::bae::BaeModel;
use crate::error::{Error, Result};
use crate::gain_stats::{cascaded_pdf_approx, fading_moment, fading_partial_moment, gain_moment, GainDistribution};
use crate::patterns::GaussianPattern;
use crate::quad::{self, Tolerance};
use crate::real::{c, to_f64, Real};
use crate::specfun::{binomial, far_field_moment, fox_h_gamma_mean, gamma_p, gamma_q, hyp2f1_euler, Truncation};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams<T> {
    pub alpha_l: T,
    pub alpha_n: T,
    pub c_l: T,
    pub c_n: T,
    pub m_l: u32,
    pub m_n: u32,
    pub beta: T,
}

impl<T: Real> Default for ChannelParams<T> {
    fn default() -> Self {
        ChannelParams {
            alpha_l: c(2.1),
            alpha_n: c(2.92),
            c_l: c(10f64.powf(-6.14)),
            c_n: c(10f64.powf(-7.2)),
            m_l: 3,
            m_n: 2,
            beta: c(0.0071),
        }
    }
}

impl<T: Real> ChannelParams<T> {
    pub fn validate(&self) -> Result<()> {
        let bad = |field, msg: String| Err(Error::InvalidParameter { field, msg });
        if !(self.alpha_n > self.alpha_l && self.alpha_l > T::zero()) {
            return bad("alpha", format!("need alpha_n > alpha_l > 0 ({} / {})", self.alpha_n, self.alpha_l));
        }
        if !(self.alpha_n > c(2.0)) {
            return bad("alpha_n", format!("must exceed 2, got {}", self.alpha_n));
        }
        if !(self.c_l >= self.c_n && self.c_n > T::zero()) {
            return bad("c_l", format!("need c_l >= c_n > 0 ({} / {})", self.c_l, self.c_n));
        }
        if self.m_l == 0 || self.m_n == 0 {
            return bad("m", "fading orders must be >= 1".into());
        }
        if !(self.beta > T::zero()) {
            return bad("beta", format!("must be positive, got {}", self.beta));
        }
        Ok(())
    }

    fn link(&self, los: bool) -> (T, T, u32) {
        if los { (self.alpha_l, self.c_l, self.m_l) } else { (self.alpha_n, self.c_n, self.m_n) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetworkParams<T> {
    pub lambda_t: T,
    pub r0: T,
    pub pt: T,
}

impl<T: Real> Default for NetworkParams<T> {
    fn default() -> Self {
        NetworkParams { lambda_t: c(5e-4), r0: c(50.0), pt: c(10.0) }
    }
}

impl<T: Real> NetworkParams<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_t >= T::zero() && self.r0 > T::zero() && self.pt > T::zero()) {
            return Err(Error::InvalidParameter { field: "network", msg: format!("{self:?}") });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EhModel<T> {
    Nonlinear { pm: T, pa: T, pb: T },
    Linear { zeta: T },
}

impl<T: Real> Default for EhModel<T> {
    fn default() -> Self {
        EhModel::Nonlinear { pm: c(0.01), pa: c(1500.0), pb: c(0.0022) }
    }
}

impl<T: Real> EhModel<T> {
    /// DC output for RF input `x` (both in W).
    pub fn eh_dc(&self, x: T) -> Result<T> {
        if !(x >= T::zero()) {
            return Err(Error::domain("eh_dc", format!("RF power must be >= 0, got {x}")));
        }
        Ok(match *self {
            EhModel::Nonlinear { pm, pa, pb } => -pm * (-pa * x).exp_m1() / (T::one() + (-pa * (x - pb)).exp()),
            EhModel::Linear { zeta } => zeta * x,
        })
    }

    /// RF level whose DC output equals `eps_th`.
    pub fn invert_threshold(&self, eps_th: T) -> Result<T> {
        if !(eps_th >= T::zero()) {
            return Err(Error::domain("invert_threshold", format!("threshold must be >= 0, got {eps_th}")));
        }
        match *self {
            EhModel::Nonlinear { pm, pa, pb } => {
                if eps_th >= pm {
                    return Err(Error::CoverageZero { eps_th: to_f64(eps_th), pm: to_f64(pm) });
                }
                let r = (pm - eps_th) / (pm + eps_th * (pa * pb).exp());
                Ok(-r.ln() / pa)
            }
            EhModel::Linear { zeta } => Ok(eps_th / zeta),
        }
    }

    /// Saturation level; infinite for the linear model.
    /// `dε/dx` of the rectifier curve.
    pub fn slope(&self, x: T) -> T {
        match *self {
            EhModel::Nonlinear { pm, pa, pb } => {
                let e = (-pa * x).exp();
                let b = (pa * pb).exp();
                let d = T::one() + e * b;
                pm * pa * e * (T::one() + b) / (d * d)
            }
            EhModel::Linear { zeta } => zeta,
        }
    }

    /// RF level past which the remaining DC gain is below 1e-18 of `p_m`.
    fn slope_cutoff(&self) -> T {
        match *self {
            EhModel::Nonlinear { pa, pb, .. } => pb + c::<T>(42.0) / pa,
            EhModel::Linear { .. } => T::infinity(),
        }
    }

    pub fn saturation(&self) -> T {
        match *self {
            EhModel::Nonlinear { pm, .. } => pm,
            EhModel::Linear { .. } => T::infinity(),
        }
    }
}

/// Free-function forms.
pub fn eh_dc<T: Real>(eh: &EhModel<T>, rf_power: T) -> Result<T> {
    eh.eh_dc(rf_power)
}

pub fn invert_threshold<T: Real>(eh: &EhModel<T>, eps_th: T) -> Result<T> {
    eh.invert_threshold(eps_th)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageSpec<T> {
    pub k_order: u32,
    pub series: Truncation<T>,
    pub quad_tol: Tolerance<T>,
}

impl<T: Real> Default for CoverageSpec<T> {
    fn default() -> Self {
        CoverageSpec { k_order: 5, series: Truncation::default(), quad_tol: Tolerance::default() }
    }
}

impl<T: Real> CoverageSpec<T> {
    /// `A = K·(K!)^{−1/K}`.
    pub fn a_const(&self) -> T {
        let k: T = c(f64::from(self.k_order));
        k * (-(k + T::one()).lgamma() / k).exp()
    }

    /// `a_k = A·k/ε̃`.
    pub fn a_k(&self, k: u32, eps_rf: T) -> T {
        self.a_const() * c(f64::from(k)) / eps_rf
    }
}

fn serving_gain<T: Real>(net: &NetworkParams<T>, chan: &ChannelParams<T>, p: &GaussianPattern<T>) -> T {
    net.pt * p.gm * p.gm * chan.c_l * net.r0.powf(-chan.alpha_l)
}

/// `ϖ = 1/(2ησ²)`.
pub fn varpi<T: Real>(p: &GaussianPattern<T>, sigma: T) -> T {
    T::one() / (c::<T>(2.0) * p.eta * sigma * sigma)
}

/// Laplace transform of the serving-link energy at `a` (1/W).
pub fn laplace_e0<T: Real>(a: T, net: &NetworkParams<T>, chan: &ChannelParams<T>, p: &GaussianPattern<T>, sigma: T) -> Result<T> {
    if !(a >= T::zero()) {
        return Err(Error::domain("laplace_e0", format!("a must be >= 0, got {a}")));
    }
    let m: T = c(f64::from(chan.m_l));
    let gamma = a * serving_gain(net, chan, p) / m;
    if sigma == T::zero() {
        return Ok((T::one() + gamma).powf(-m));
    }
    let w = varpi(p, sigma);
    let e = BaeModel::truncation_mass(sigma);
    let big_f = |x: T| -> Result<T> { Ok(x.powf(w) * hyp2f1_euler(m, w, gamma * x)?) };
    Ok((big_f(T::one())? - big_f(p.g)?) / (e * e))
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldDiagnostics {
    pub bands: usize,
    pub max_terms: usize,
    pub h_evals: usize,
    /// Largest |term| among the final ones of each band.
    pub last_term: f64,
}

#[derive(Debug, Clone)]
struct Band<T> {
    key: i64,
    s: T,
    /// `S_t = E[x'^2 (1−x')^t]` restricted to the band.
    st: Vec<T>,
}

#[derive(Debug, Clone)]
struct LinkSeries<T> {
    alpha: T,
    c: T,
    bands: Vec<Band<T>>,
}

/// Precomputed series for the Laplace transforms of the LOS and NLOS
/// interference fields.
///
/// Each transform reduces to `D = E[Φ(y·x)]` with `x = (ωh)^{1/α}` and
/// `Φ(z) = E_{U~Γ(2)}[1 − e^{−(z/U)^α}]`. The joint law of `ωh` is split into
/// narrow bands on a geometric grid; inside a band `x/s` stays within 25% of
/// one, so the expansion of `Φ(y·s·x')` about `x' = 1` converges fast. The
/// band coefficients do not depend on `a` and are computed once here.
#[derive(Debug, Clone)]
pub struct FieldLaplace<T> {
    net: NetworkParams<T>,
    chan: ChannelParams<T>,
    gm: T,
    trunc: Truncation<T>,
    dist: GainDistribution<T>,
    los: LinkSeries<T>,
    nlos: LinkSeries<T>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldValue<T> {
    pub value: T,
    pub diagnostics: FieldDiagnostics,
}

/// Spread of `x` allowed inside one band.
const BAND_RATIO: f64 = 1.667;

fn solve_increasing<T: Real>(f: impl Fn(T) -> T, mut lo: T, mut hi: T) -> T {
    // geometric bisection; f(lo) < 0 < f(hi)
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if f(mid) < T::zero() { lo = mid } else { hi = mid }
        if hi / lo - T::one() < c(1e-10) {
            break;
        }
    }
    (lo * hi).sqrt()
}

impl<T: Real> LinkSeries<T> {
    fn build(dist: &GainDistribution<T>, g: T, alpha: T, cc: T, m: u32, t_max: usize) -> Result<Self> {
        let r0 = c::<T>(BAND_RATIO).powf(alpha / c(2.0));
        let n = ((-g.ln()) / r0.ln()).ceil().to_usize().unwrap_or(1).max(1);
        let ratio = g.powf(-T::one() / c(n as f64));
        let ln_r = ratio.ln();
        let mm: T = c(f64::from(m));
        let h_lo = solve_increasing(|h: T| gamma_p(mm, mm * h).ln() - c::<T>(1e-12).ln(), c(1e-30), T::one());
        let h_hi = solve_increasing(|h: T| c::<T>(1e-14).ln() - gamma_q(mm, mm * h).ln(), T::one(), c(500.0));
        let j0 = (h_lo.ln() / ln_r).floor().to_i64().unwrap_or(0);
        let j1 = (h_hi.ln() / ln_r).ceil().to_i64().unwrap_or(0);
        let kmax = t_max + 2;
        let zs: Vec<T> = (0..=kmax).map(|k| c::<T>(k as f64) / alpha).collect();

        // Ω bins: atom, then sidelobe and mainlobe segments cut at g²·R^i.
        let g2 = g * g;
        let mut om: Vec<(i64, Vec<T>)> = Vec::new();
        for a in &dist.atoms {
            om.push((0, zs.iter().map(|&z| a.mass * a.at.powf(z)).collect()));
        }
        for i in 0..(2 * n) {
            let lo = g2 * ratio.powi(i as i32);
            let hi = if i + 1 == 2 * n { T::one() } else { g2 * ratio.powi(i as i32 + 1) };
            let mut row = Vec::with_capacity(zs.len());
            for &z in &zs {
                row.push(dist.segment_partial_moment(lo, hi, z)?);
            }
            om.push((i as i64, row));
        }
        // h bins; the first one carries the whole lower tail.
        let mut hb: Vec<(i64, Vec<T>)> = Vec::new();
        for j in (j0 - 1)..j1 {
            let h1 = if j == j0 - 1 { T::zero() } else { ratio.powi(j as i32) };
            let h2 = ratio.powi(j as i32 + 1);
            let mut row = Vec::with_capacity(zs.len());
            for &z in &zs {
                row.push(fading_partial_moment(m, z, h1, h2)?);
            }
            hb.push((j, row));
        }

        let mut raw: BTreeMap<i64, Vec<T>> = BTreeMap::new();
        for (i, orow) in &om {
            for (j, hrow) in &hb {
                let e = raw.entry(i + j).or_insert_with(|| vec![T::zero(); zs.len()]);
                for k in 1..zs.len() {
                    e[k] = e[k] + orow[k] * hrow[k];
                }
            }
        }
        let inv_a = T::one() / alpha;
        let bands = raw
            .into_iter()
            .map(|(key, mut mom)| {
                let wlo = g2 * ratio.powi(key as i32);
                let whi = wlo * ratio * ratio;
                let s = (wlo.powf(inv_a) + whi.powf(inv_a)) / c(2.0);
                let mut sk = T::one();
                for v in mom.iter_mut().skip(1) {
                    sk = sk * s;
                    *v = *v / sk;
                }
                let st = (0..=t_max)
                    .map(|t| {
                        let mut acc = T::zero();
                        for q in 0..=t {
                            let b: T = binomial(t as u32, q as u32);
                            let term = b * mom[q + 2];
                            acc = if q % 2 == 0 { acc + term } else { acc - term };
                        }
                        acc
                    })
                    .collect();
                Band { key, s, st }
            })
            .collect();
        Ok(LinkSeries { alpha, c: cc, bands })
    }

    /// `D(y) = Σ_bands Σ_t S_t·(t+1)·E_{Γ(t+2)}[1 − e^{−(y·s/U)^α}]`.
    fn sum(&self, y: T, trunc: &Truncation<T>) -> Result<(T, FieldDiagnostics)> {
        let mut diag = FieldDiagnostics { bands: self.bands.len(), ..Default::default() };
        let mut total = T::zero();
        for band in &self.bands {
            let z = y * band.s;
            let mut quiet = 0;
            let mut done = false;
            let mut last = T::zero();
            for (t, &st) in band.st.iter().enumerate() {
                let h = c::<T>(t as f64 + 1.0) * fox_h_gamma_mean(c::<T>(t as f64 + 2.0), self.alpha, z, true)?;
                diag.h_evals += 1;
                let term = st * h;
                total = total + term;
                last = term;
                quiet = if term.abs() < trunc.tol { quiet + 1 } else { 0 };
                if quiet >= trunc.window {
                    diag.max_terms = diag.max_terms.max(t + 1);
                    done = true;
                    break;
                }
            }
            diag.last_term = diag.last_term.max(to_f64(last.abs()));
            if !done {
                return Err(Error::SeriesNonConvergence { terms: band.st.len(), last_term: to_f64(last), band: band.key.unsigned_abs() as usize });
            }
        }
        Ok((total, diag))
    }
}

impl<T: Real> FieldLaplace<T> {
    pub fn new(net: &NetworkParams<T>, chan: &ChannelParams<T>, pattern: &GaussianPattern<T>, trunc: Truncation<T>) -> Result<Self> {
        chan.validate()?;
        net.validate()?;
        let dist = cascaded_pdf_approx(pattern, &BaeModel::Uniform);
        let los = LinkSeries::build(&dist, pattern.g, chan.alpha_l, chan.c_l, chan.m_l, trunc.t_max)?;
        let nlos = LinkSeries::build(&dist, pattern.g, chan.alpha_n, chan.c_n, chan.m_n, trunc.t_max)?;
        Ok(FieldLaplace { net: *net, chan: *chan, gm: pattern.gm, trunc, dist, los, nlos })
    }

    /// Same coefficients with another transmitter density.
    pub fn with_lambda(&self, lambda_t: T) -> Self {
        let mut f = self.clone();
        f.net.lambda_t = lambda_t;
        f
    }

    pub fn eval(&self, a: T, los: bool) -> Result<FieldValue<T>> {
        if !(a >= T::zero()) {
            return Err(Error::domain("laplace_field", format!("a must be >= 0, got {a}")));
        }
        if a == T::zero() || self.net.lambda_t == T::zero() {
            return Ok(FieldValue { value: T::one(), diagnostics: FieldDiagnostics::default() });
        }
        let link = if los { &self.los } else { &self.nlos };
        let beta = self.chan.beta;
        let k = a * self.net.pt * self.gm * self.gm * link.c;
        let y = beta * k.powf(T::one() / link.alpha);
        let (d, diag) = link.sum(y, &self.trunc)?;
        let two_pi_lambda = c::<T>(2.0) * T::PI() * self.net.lambda_t;
        let l2 = d / (beta * beta);
        let exponent = if los {
            l2
        } else {
            let (_, _, m) = self.chan.link(false);
            let z = c::<T>(2.0) / link.alpha;
            let chi = gain_moment(&self.dist, z)? * fading_moment(m, z)?;
            let l1 = k.powf(z) * chi * (T::one() - z).tgamma() / c(2.0);
            l1 - l2
        };
        Ok(FieldValue { value: (-two_pi_lambda * exponent).exp(), diagnostics: diag })
    }
}

/// One-shot Laplace transform of the LOS or NLOS field energy.
pub fn laplace_field<T: Real>(a: T, net: &NetworkParams<T>, chan: &ChannelParams<T>, pattern: &GaussianPattern<T>, los: bool) -> Result<T> {
    if a == T::zero() || net.lambda_t == T::zero() {
        return Ok(T::one());
    }
    Ok(FieldLaplace::new(net, chan, pattern, Truncation::default())?.eval(a, los)?.value)
}

/// Neumaier-compensated sum.
pub fn compensated_sum<T: Real>(xs: impl IntoIterator<Item = T>) -> T {
    let mut s = T::zero();
    let mut comp = T::zero();
    for x in xs {
        let t = s + x;
        comp = comp + if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + comp
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageValue<T> {
    pub p_ec: T,
    /// Alternating sum before clamping to `[0, 1]`.
    pub raw: T,
    /// Set when the clamp moved the value by more than 1e−6.
    pub clamped: bool,
}

/// Coverage evaluator with the field series built once.
#[derive(Debug, Clone)]
pub struct CoverageModel<T> {
    pub spec: CoverageSpec<T>,
    pub net: NetworkParams<T>,
    pub chan: ChannelParams<T>,
    pub pattern: GaussianPattern<T>,
    pub eh: EhModel<T>,
    field: FieldLaplace<T>,
}

impl<T: Real> CoverageModel<T> {
    pub fn new(spec: CoverageSpec<T>, net: NetworkParams<T>, chan: ChannelParams<T>, pattern: GaussianPattern<T>, eh: EhModel<T>) -> Result<Self> {
        if spec.k_order == 0 {
            return Err(Error::InvalidParameter { field: "k_order", msg: "must be >= 1".into() });
        }
        let field = FieldLaplace::new(&net, &chan, &pattern, spec.series)?;
        Ok(CoverageModel { spec, net, chan, pattern, eh, field })
    }

    pub fn field(&self) -> &FieldLaplace<T> {
        &self.field
    }

    pub fn coverage(&self, eps_th: T, sigma: T) -> Result<CoverageValue<T>> {
        match self.eh.invert_threshold(eps_th) {
            Ok(v) => self.coverage_rf(v, sigma),
            Err(Error::CoverageZero { .. }) => Ok(CoverageValue { p_ec: T::zero(), raw: T::zero(), clamped: false }),
            Err(e) => Err(e),
        }
    }

    /// Coverage against an RF-level threshold.
    pub fn coverage_rf(&self, eps_rf: T, sigma: T) -> Result<CoverageValue<T>> {
        if eps_rf == T::zero() {
            return Ok(CoverageValue { p_ec: T::one(), raw: T::one(), clamped: false });
        }
        let kk = self.spec.k_order;
        let mut terms = Vec::with_capacity(kk as usize + 1);
        for k in 0..=kk {
            let a = self.spec.a_k(k, eps_rf);
            let l = laplace_e0(a, &self.net, &self.chan, &self.pattern, sigma)?
                * self.field.eval(a, true)?.value
                * self.field.eval(a, false)?.value;
            let b: T = binomial(kk, k);
            terms.push(if k % 2 == 0 { b * l } else { -b * l });
        }
        let raw = compensated_sum(terms);
        let p = raw.max(T::zero()).min(T::one());
        Ok(CoverageValue { p_ec: p, raw, clamped: (p - raw).abs() > c(1e-6) })
    }

    /// Mean DC energy: `ε_min·P(ε_min) + ∫_{ε_min}^{p_m} P(ε) dε`.
    pub fn avg_dc_energy(&self, eps_min: T, sigma: T) -> Result<T> {
        let pm = self.eh.saturation();
        if !(eps_min >= T::zero() && eps_min < pm) || !pm.is_finite() {
            return Err(Error::domain("avg_dc_energy", format!("need 0 <= eps_min < pm (eps_min={eps_min}, pm={pm})")));
        }
        let head = eps_min * self.coverage(eps_min, sigma)?.p_ec;
        // Substituting the RF level x moves the integral away from the log
        // singularity at p_m: the weight dε/dx decays like e^{-p_a x}.
        let x_lo = self.eh.invert_threshold(eps_min)?;
        let x_hi = self.eh.slope_cutoff();
        let lo = if x_lo > T::zero() { x_lo } else { x_hi * c(1e-12) };
        let mut err = None;
        let f = |u: T| {
            let x = u.exp();
            match self.coverage_rf(x, sigma) {
                Ok(v) => v.p_ec * self.eh.slope(x) * x,
                Err(e) => {
                    err.get_or_insert(e);
                    T::zero()
                }
            }
        };
        let tol = Tolerance::new(pm * c(1e-9), c(1e-6));
        let body = if lo < x_hi { quad::integrate(f, lo.ln(), x_hi.ln(), tol)?.value } else { T::zero() };
        if let Some(e) = err {
            return Err(e);
        }
        Ok(head + body)
    }
}

/// One-shot coverage probability.
pub fn energy_coverage<T: Real>(
    eps_th: T,
    spec: &CoverageSpec<T>,
    net: &NetworkParams<T>,
    chan: &ChannelParams<T>,
    pattern: &GaussianPattern<T>,
    eh: &EhModel<T>,
    sigma: T,
) -> Result<T> {
    Ok(CoverageModel::new(*spec, *net, *chan, *pattern, *eh)?.coverage(eps_th, sigma)?.p_ec)
}

pub fn avg_dc_energy<T: Real>(
    eps_min: T,
    spec: &CoverageSpec<T>,
    net: &NetworkParams<T>,
    chan: &ChannelParams<T>,
    pattern: &GaussianPattern<T>,
    eh: &EhModel<T>,
    sigma: T,
) -> Result<T> {
    CoverageModel::new(*spec, *net, *chan, *pattern, *eh)?.avg_dc_energy(eps_min, sigma)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RfEnergy<T> {
    pub e0: T,
    pub el: T,
    pub en: T,
}

impl<T: Real> RfEnergy<T> {
    pub fn total(&self) -> T {
        self.e0 + self.el + self.en
    }
}

/// `E{Ω}` of the serving link under the mainlobe-only law.
fn serving_mean_gain<T: Real>(p: &GaussianPattern<T>, sigma: T) -> T {
    if sigma == T::zero() {
        return T::one();
    }
    let w = varpi(p, sigma);
    let e = BaeModel::truncation_mass(sigma);
    let two_eta_var = T::one() / w;
    (T::one() - p.g.powf(w + T::one())) / ((two_eta_var + T::one()) * e * e)
}

/// Mean RF energy split into serving, LOS-field and NLOS-field parts. Field
/// transmitters closer than 1 m are ignored.
pub fn avg_rf_energy<T: Real>(net: &NetworkParams<T>, chan: &ChannelParams<T>, p: &GaussianPattern<T>, sigma: T) -> Result<RfEnergy<T>> {
    chan.validate()?;
    if !(sigma >= T::zero()) {
        return Err(Error::domain("avg_rf_energy", format!("sigma must be >= 0, got {sigma}")));
    }
    let e0 = serving_gain(net, chan, p) * serving_mean_gain(p, sigma);
    if net.lambda_t == T::zero() {
        return Ok(RfEnergy { e0, el: T::zero(), en: T::zero() });
    }
    let mean_omega = gain_moment(&cascaded_pdf_approx(p, &BaeModel::Uniform), T::one())?;
    let k = c::<T>(2.0) * T::PI() * net.lambda_t * net.pt * p.gm * p.gm * mean_omega;
    let el = k * chan.c_l * far_field_moment(chan.alpha_l, chan.beta)?;
    let en = k * chan.c_n * (T::one() / (chan.alpha_n - c(2.0)) - far_field_moment(chan.alpha_n, chan.beta)?);
    Ok(RfEnergy { e0, el, en })
}

/// Relative loss of mean serving-link energy against perfect alignment.
pub fn rel<T: Real>(p: &GaussianPattern<T>, sigma: T) -> T {
    T::one() - serving_mean_gain(p, sigma)
}
