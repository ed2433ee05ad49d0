use std::f64::consts::PI;

use mmwpt::analysis::{ChannelParams, EhModel, NetworkParams};
use mmwpt::bae::BaeModel;
use mmwpt::montecarlo::{self, EnergyMetric, McConfig};
use mmwpt::patterns::{gaussian_from_beamwidth, AntennaPattern, UlaPattern};

fn cfg(antenna: AntennaPattern<f64>, sigma: f64, lambda: f64, trials: u64) -> McConfig {
    let net = NetworkParams { lambda_t: lambda, ..Default::default() };
    let mut c = McConfig::new(antenna, BaeModel::gaussian(sigma).unwrap(), net, ChannelParams::default(), EhModel::default()).unwrap();
    c.trials = trials;
    c
}

fn gaussian() -> AntennaPattern<f64> {
    AntennaPattern::Gaussian(gaussian_from_beamwidth(PI / 12.0).unwrap())
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

#[test]
fn seeds_are_reproducible_and_distinct() {
    let c = cfg(gaussian(), 0.05, 5e-4, 5000);
    let a = montecarlo::sample_rf(&c).unwrap();
    assert_eq!(a, montecarlo::sample_rf(&c).unwrap());
    let mut d = c.clone();
    d.seed = 2;
    let b = montecarlo::sample_rf(&d).unwrap();
    assert!(a.iter().zip(&b).filter(|(x, y)| x != y).count() > 4900);
    // trial i does not depend on how many trials run
    let mut short = c.clone();
    short.trials = 3000;
    assert_eq!(&a[..3000], &montecarlo::sample_rf(&short).unwrap()[..]);
}

#[test]
fn doubling_the_radius_barely_moves_the_mean() {
    let c = cfg(gaussian(), 0.0, 5e-4, 100_000).energy_convention();
    let mut big = c.clone();
    big.r_max = 2.0 * c.r_max;
    let a = montecarlo::sample_rf(&c).unwrap();
    let b = montecarlo::sample_rf(&big).unwrap();
    // common random numbers: the larger disc only adds points
    assert!(a.iter().zip(&b).all(|(x, y)| y >= x));
    assert!(mean(&b) / mean(&a) - 1.0 < 5e-3);
}

#[test]
fn field_points_respect_the_disc() {
    let c = cfg(gaussian(), 0.0, 1e-3, 1).energy_convention();
    let mut count = 0usize;
    let trials = 400;
    for t in 0..trials {
        let pts = montecarlo::sample_field(&c, t);
        assert!(pts.iter().all(|p| p.r >= 1.0 && p.r <= c.r_max));
        count += pts.len();
    }
    let want = 1e-3 * PI * (c.r_max * c.r_max - 1.0);
    let got = count as f64 / trials as f64;
    assert!((got / want - 1.0).abs() < 5.0 / (want * trials as f64).sqrt());
}

#[test]
fn serving_link_fading_statistics() {
    let mut c = cfg(gaussian(), 0.0, 0.0, 200_000);
    let chan = ChannelParams::<f64>::default();
    let p = gaussian_from_beamwidth(PI / 12.0).unwrap();
    let e = c.net.pt * p.gm * p.gm * chan.c_l * c.net.r0.powf(-chan.alpha_l);
    c.unit_fading = true;
    let flat = montecarlo::sample_rf(&c).unwrap();
    assert!(flat.iter().all(|&x| (x / e - 1.0).abs() < 1e-12));
    c.unit_fading = false;
    let xs = montecarlo::sample_rf(&c).unwrap();
    let m = mean(&xs);
    let var = xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64;
    assert!((m / e - 1.0).abs() < 0.01);
    // unit-mean Gamma of order m has variance 1/m
    assert!((var / (e * e) * f64::from(chan.m_l) - 1.0).abs() < 0.03);
}

#[test]
fn ula_differs_from_gaussian_under_perfect_alignment() {
    let g = montecarlo::estimate_mean_energy(&cfg(gaussian(), 0.0, 5e-4, 50_000).energy_convention(), EnergyMetric::Rf).unwrap();
    let ula = AntennaPattern::Ula(UlaPattern::for_beamwidth(PI / 12.0).unwrap());
    let u = montecarlo::estimate_mean_energy(&cfg(ula, 0.0, 5e-4, 50_000).energy_convention(), EnergyMetric::Rf).unwrap();
    assert!((g.mean - u.mean).abs() > 2.0 * (g.ci_halfwidth + u.ci_halfwidth), "{g:?} vs {u:?}");
}

#[test]
fn mean_energy_falls_with_alignment_error() {
    let t0 = PI / 12.0;
    let means: Vec<f64> = [0.0, t0 / 4.0, t0 / 2.0, t0]
        .iter()
        .map(|&s| montecarlo::estimate_mean_energy(&cfg(gaussian(), s, 5e-4, 50_000).energy_convention(), EnergyMetric::Dc).unwrap().mean)
        .collect();
    for w in means.windows(2) {
        assert!(w[1] < w[0], "{means:?}");
    }
}

#[test]
fn interval_edge_cases() {
    let eh = EhModel::default();
    let all = montecarlo::coverage_from_samples(&[1.0; 100], &eh, 1e-9).unwrap();
    assert_eq!(all.mean, 1.0);
    assert!(all.ci_halfwidth > 0.0 && all.ci_halfwidth < 0.05);
    let none = montecarlo::coverage_from_samples(&[0.0; 100], &eh, 1e-9).unwrap();
    assert_eq!(none.mean, 0.0);
    assert!(none.ci_halfwidth > 0.0);
    assert!(montecarlo::coverage_from_samples(&[], &eh, 1e-9).is_err());
    assert!(montecarlo::mean_from_samples(&[], &eh, EnergyMetric::Rf).is_err());
    let mut bad = cfg(gaussian(), 0.0, 5e-4, 10);
    bad.trials = 0;
    assert!(montecarlo::sample_rf(&bad).is_err());
}
