//! Monte-Carlo simulation of the harvested energy in a Poisson field.
//!
//! Random streams: trial `i` reads ChaCha8 stream `i` of the generator
//! keyed by `seed_from_u64(seed)`. Inside a trial, block `k` starts at word
//! offset `k·2^32`: block 0 drives the serving link, block `r+1` the field
//! ring `r`. Each field point draws a seed for a PCG stream that carries its
//! gains and fading. Rings have fixed edges, so changing `r_max` only adds
//! or drops points and leaves every other draw untouched.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_pcg::Pcg64Mcg;
use rand_distr::{Distribution, Gamma, Poisson, Uniform};
use rayon::prelude::*;

use crate::analysis::{ChannelParams, EhModel, NetworkParams};
use crate::bae::BaeModel;
use crate::error::{Error, Result};
use crate::patterns::AntennaPattern;
use crate::quad::{self, Tolerance};
use crate::specfun::far_field_moment;

const CHUNK: u64 = 2048;
/// Outer edge of the first field ring; later rings double.
const FIRST_RING: f64 = 16.0;
/// Truncated-tail energy allowed, relative to the expected total.
pub const TAIL_FRACTION: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    pub trials: u64,
    pub r_max: f64,
    pub r_min_field: f64,
    pub seed: u64,
    pub antenna: AntennaPattern<f64>,
    pub bae_assoc: BaeModel<f64>,
    pub chan: ChannelParams<f64>,
    pub net: NetworkParams<f64>,
    pub eh: EhModel<f64>,
    /// Replace every fading gain by 1.
    pub unit_fading: bool,
}

impl McConfig {
    /// Coverage convention (`r_min_field = 0`) with the default radius.
    pub fn new(antenna: AntennaPattern<f64>, bae_assoc: BaeModel<f64>, net: NetworkParams<f64>, chan: ChannelParams<f64>, eh: EhModel<f64>) -> Result<Self> {
        let mut cfg = McConfig { trials: 100_000, r_max: 0.0, r_min_field: 0.0, seed: 1, antenna, bae_assoc, chan, net, eh, unit_fading: false };
        cfg.r_max = default_r_max(&cfg)?;
        Ok(cfg)
    }

    /// Switches to the energy convention: field points closer than 1 m are
    /// ignored.
    pub fn energy_convention(mut self) -> Self {
        self.r_min_field = 1.0;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter { field: "trials", msg: "must be >= 1".into() });
        }
        if !(self.r_max > self.r_min_field && self.r_min_field >= 0.0) {
            return Err(Error::InvalidParameter { field: "r_max", msg: format!("need r_max > r_min_field >= 0 ({} / {})", self.r_max, self.r_min_field) });
        }
        self.chan.validate()?;
        self.net.validate()
    }
}

/// `(1/2π)∫ G(θ) dθ` over a full turn.
pub fn mean_pattern_gain(p: &AntennaPattern<f64>) -> Result<f64> {
    let n = 512;
    let pts: Vec<f64> = (0..=n).map(|i| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / n as f64).collect();
    let f = |t: f64| p.gain(t.min(std::f64::consts::PI - 1e-15)).unwrap_or(0.0);
    Ok(quad::integrate_pieces(f, &pts, Tolerance::new(1e-12, 1e-10))?.value / (2.0 * std::f64::consts::PI))
}

/// Smallest radius whose neglected far-field energy is below
/// [`TAIL_FRACTION`] of the expected total.
///
/// The tail is bounded by the LOS term with its blockage factor plus the
/// NLOS term with `P_N ≤ 1`, both weighted by the mean field gain product.
pub fn default_r_max(cfg: &McConfig) -> Result<f64> {
    let chan = &cfg.chan;
    let net = &cfg.net;
    if net.lambda_t == 0.0 {
        return Ok(FIRST_RING);
    }
    let mg = mean_pattern_gain(&cfg.antenna)?.powi(2);
    let k = 2.0 * std::f64::consts::PI * net.lambda_t * net.pt * mg;
    let peak = cfg.antenna.peak_gain();
    let serving = net.pt * peak * peak * chan.c_l * net.r0.powf(-chan.alpha_l);
    let field = k * (chan.c_l * far_field_moment(chan.alpha_l, chan.beta)? + chan.c_n * (1.0 / (chan.alpha_n - 2.0) - far_field_moment(chan.alpha_n, chan.beta)?));
    let budget = TAIL_FRACTION * (serving + field);
    let tail = |r: f64| -> Result<f64> {
        let los = quad::integrate_to_infinity_scaled(|x: f64| x.powf(1.0 - chan.alpha_l) * (-chan.beta * x).exp(), r, 1.0 / chan.beta, Tolerance::new(1e-300, 1e-8))?.value;
        Ok(k * (chan.c_l * los + chan.c_n * r.powf(2.0 - chan.alpha_n) / (chan.alpha_n - 2.0)))
    };
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while tail(hi)? > budget {
        lo = hi;
        hi *= 2.0;
        if hi > 1e9 {
            return Err(Error::InvalidParameter { field: "r_max", msg: "tail bound does not decay".into() });
        }
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if tail(mid)? > budget { lo = mid } else { hi = mid }
    }
    Ok(hi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    pub r: f64,
    pub los: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RfDraw {
    pub e0: f64,
    pub el: f64,
    pub en: f64,
}

impl RfDraw {
    pub fn total(&self) -> f64 {
        self.e0 + self.el + self.en
    }
}

fn block_rng(seed: u64, trial: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng.set_word_pos(u128::from(block) << 32);
    rng
}

fn ring_edges(cfg: &McConfig) -> Vec<f64> {
    let mut e = vec![cfg.r_min_field];
    let mut r = FIRST_RING;
    while *e.last().unwrap() < cfg.r_max {
        e.push(r.max(cfg.r_min_field));
        r *= 2.0;
    }
    e.dedup();
    e
}

fn for_each_point(cfg: &McConfig, trial: u64, mut f: impl FnMut(FieldPoint, &mut Pcg64Mcg)) {
    if cfg.net.lambda_t == 0.0 {
        return;
    }
    let unit = Uniform::new(0.0f64, 1.0);
    for (ring, w) in ring_edges(cfg).windows(2).enumerate() {
        let (a2, b2) = (w[0] * w[0], w[1] * w[1]);
        let mean = cfg.net.lambda_t * std::f64::consts::PI * (b2 - a2);
        let mut rng = block_rng(cfg.seed, trial, ring as u64 + 1);
        let n = if mean > 0.0 { Poisson::new(mean).map(|p| p.sample(&mut rng) as u64).unwrap_or(0) } else { 0 };
        for _ in 0..n {
            let r = (a2 + unit.sample(&mut rng) * (b2 - a2)).sqrt();
            let los = unit.sample(&mut rng) < (-cfg.chan.beta * r).exp();
            // marks get their own stream so dropping a point leaves the rest intact
            let marks: u64 = rng.gen();
            if r <= cfg.r_max {
                f(FieldPoint { r, los }, &mut Pcg64Mcg::seed_from_u64(marks));
            }
        }
    }
}

/// Field realisation of trial `trial`.
pub fn sample_field(cfg: &McConfig, trial: u64) -> Vec<FieldPoint> {
    let mut v = Vec::new();
    for_each_point(cfg, trial, |p, _| v.push(p));
    v
}

fn fading<R: Rng + ?Sized>(m: u32, unit: bool, rng: &mut R) -> f64 {
    if unit {
        return 1.0;
    }
    let m = f64::from(m);
    Gamma::new(m, 1.0 / m).expect("positive shape").sample(rng)
}

fn gain(p: &AntennaPattern<f64>, theta: f64) -> f64 {
    p.gain(theta).expect("sampled angle lies in [-pi, pi)")
}

/// One draw of the received RF energy, split by component.
pub fn simulate_rf(cfg: &McConfig, trial: u64) -> RfDraw {
    let chan = &cfg.chan;
    let pt = cfg.net.pt;
    let mut rng = block_rng(cfg.seed, trial, 0);
    let g0 = gain(&cfg.antenna, cfg.bae_assoc.sample(&mut rng)) * gain(&cfg.antenna, cfg.bae_assoc.sample(&mut rng));
    let h0 = fading(chan.m_l, cfg.unit_fading, &mut rng);
    let mut d = RfDraw { e0: pt * chan.c_l * cfg.net.r0.powf(-chan.alpha_l) * h0 * g0, ..Default::default() };
    let uni = BaeModel::<f64>::Uniform;
    for_each_point(cfg, trial, |p, rng| {
        let gg = gain(&cfg.antenna, uni.sample(rng)) * gain(&cfg.antenna, uni.sample(rng));
        if p.los {
            d.el += pt * chan.c_l * p.r.powf(-chan.alpha_l) * fading(chan.m_l, cfg.unit_fading, rng) * gg;
        } else {
            d.en += pt * chan.c_n * p.r.powf(-chan.alpha_n) * fading(chan.m_n, cfg.unit_fading, rng) * gg;
        }
    });
    d
}

/// Total RF energy of every trial, in trial order. The result does not
/// depend on the number of worker threads.
pub fn sample_rf(cfg: &McConfig) -> Result<Vec<f64>> {
    cfg.validate()?;
    let chunks = cfg.trials.div_ceil(CHUNK);
    let parts: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| (c * CHUNK..((c + 1) * CHUNK).min(cfg.trials)).map(|t| simulate_rf(cfg, t).total()).collect())
        .collect();
    Ok(parts.concat())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub ci_halfwidth: f64,
    pub trials: u64,
}

/// Coverage with a Wilson-score 95% interval; `mean` is the raw fraction and
/// the half-width is the larger side of the interval around it.
pub fn coverage_from_samples(samples: &[f64], eh: &EhModel<f64>, eps_th: f64) -> Result<McEstimate> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter { field: "samples", msg: "empty sample".into() });
    }
    let n = samples.len() as f64;
    let mut hits = 0u64;
    for &x in samples {
        if eh.eh_dc(x)? > eps_th {
            hits += 1;
        }
    }
    let p = hits as f64 / n;
    let z = 1.959_963_984_540_054f64;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    let ci = (centre + half - p).max(p - (centre - half));
    Ok(McEstimate { mean: p, ci_halfwidth: ci, trials: samples.len() as u64 })
}

pub fn estimate_coverage(cfg: &McConfig, eps_th: f64) -> Result<McEstimate> {
    coverage_from_samples(&sample_rf(cfg)?, &cfg.eh, eps_th)
}

/// What [`estimate_mean_energy`] averages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnergyMetric {
    /// Received RF energy.
    Rf,
    /// Rectifier output.
    Dc,
    /// Rectifier output counted only above a floor `ε_min`.
    DcAbove(f64),
}

/// Sample mean with a normal-approximation 95% interval.
pub fn mean_from_samples(samples: &[f64], eh: &EhModel<f64>, metric: EnergyMetric) -> Result<McEstimate> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter { field: "samples", msg: "empty sample".into() });
    }
    let n = samples.len() as f64;
    let mut vals = Vec::with_capacity(samples.len());
    for &x in samples {
        vals.push(match metric {
            EnergyMetric::Rf => x,
            EnergyMetric::Dc => eh.eh_dc(x)?,
            EnergyMetric::DcAbove(floor) => {
                let d = eh.eh_dc(x)?;
                if d > floor { d } else { 0.0 }
            }
        });
    }
    let mean = vals.iter().sum::<f64>() / n;
    let var = vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0).max(1.0);
    Ok(McEstimate { mean, ci_halfwidth: 1.959_963_984_540_054 * (var / n).sqrt(), trials: samples.len() as u64 })
}

pub fn estimate_mean_energy(cfg: &McConfig, metric: EnergyMetric) -> Result<McEstimate> {
    mean_from_samples(&sample_rf(cfg)?, &cfg.eh, metric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{gaussian_from_beamwidth, FlatTopPattern, UlaPattern};
    use std::f64::consts::PI;

    fn cfg(lambda: f64) -> McConfig {
        let p = gaussian_from_beamwidth(PI / 12.0).unwrap();
        let net = NetworkParams { lambda_t: lambda, ..Default::default() };
        McConfig::new(AntennaPattern::Gaussian(p), BaeModel::Perfect, net, ChannelParams::default(), EhModel::default()).unwrap()
    }

    #[test]
    fn empty_field_is_deterministic_link() {
        let mut c = cfg(0.0);
        c.unit_fading = true;
        assert!(sample_field(&c, 3).is_empty());
        let d = simulate_rf(&c, 0);
        let gm = c.antenna.peak_gain();
        let want = 10.0 * gm * gm * c.chan.c_l * 50f64.powf(-2.1);
        assert!(((d.total() - want) / want).abs() < 1e-15);
    }

    #[test]
    fn field_count_and_los_fraction() {
        let mut c = cfg(5e-4);
        c.r_max = 100.0;
        let n = 4000;
        let mut count = 0usize;
        let (mut near, mut near_los) = (0usize, 0usize);
        for t in 0..n {
            for p in sample_field(&c, t) {
                count += 1;
                if (40.0..60.0).contains(&p.r) {
                    near += 1;
                    near_los += usize::from(p.los);
                }
            }
        }
        let mean = 5e-4 * PI * 100.0 * 100.0;
        let se = (mean / n as f64).sqrt();
        assert!((count as f64 / n as f64 - mean).abs() < 4.0 * se);
        let f = near_los as f64 / near as f64;
        assert!((f - (-0.0071f64 * 50.0).exp()).abs() < 0.02, "{f}");
    }

    #[test]
    fn replay_is_bit_identical() {
        let mut c = cfg(2e-4);
        c.trials = 5000;
        let a = sample_rf(&c).unwrap();
        let b = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap().install(|| sample_rf(&c).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn radius_heuristic_is_finite() {
        let c = cfg(5e-4);
        assert!(c.r_max > 100.0 && c.r_max < 5000.0, "{}", c.r_max);
    }

    #[test]
    fn mean_gains() {
        let u = AntennaPattern::<f64>::Ula(UlaPattern::new(22).unwrap());
        assert!((mean_pattern_gain(&u).unwrap() - 1.0).abs() < 1e-8);
        let p = gaussian_from_beamwidth(PI / 12.0).unwrap();
        let f = AntennaPattern::FlatTop(FlatTopPattern::matching(&p));
        let want = (p.theta3db * p.gm + (PI - p.theta3db) * p.gs) / PI;
        assert!((mean_pattern_gain(&f).unwrap() - want).abs() < 1e-6);
    }

    #[test]
    fn wilson_and_edges() {
        let eh = EhModel::default();
        let s = vec![1e-3; 2000];
        assert_eq!(coverage_from_samples(&s, &eh, 0.0).unwrap().mean, 1.0);
        assert_eq!(coverage_from_samples(&s, &eh, 0.01).unwrap().mean, 0.0);
        let e = coverage_from_samples(&s, &eh, 0.0).unwrap();
        assert!(e.ci_halfwidth > 0.0 && e.ci_halfwidth < 0.01);
    }
}
