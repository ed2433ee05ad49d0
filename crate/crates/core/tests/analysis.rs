use std::f64::consts::PI;

use mmwpt::analysis::{self, ChannelParams, CoverageModel, CoverageSpec, EhModel, NetworkParams};
use mmwpt::bae::BaeModel;
use mmwpt::montecarlo::{self, EnergyMetric, McConfig};
use mmwpt::patterns::{gaussian_from_beamwidth, AntennaPattern, GaussianPattern};
use mmwpt::quad::{integrate, Tolerance};

fn dbm(x: f64) -> f64 {
    1e-3 * 10f64.powf(x / 10.0)
}

fn model(p: GaussianPattern<f64>) -> CoverageModel<f64> {
    CoverageModel::new(CoverageSpec::default(), NetworkParams::default(), ChannelParams::default(), p, EhModel::default()).unwrap()
}

fn mc(p: GaussianPattern<f64>, sigma: f64, trials: u64) -> McConfig {
    let mut c = McConfig::new(AntennaPattern::Gaussian(p), BaeModel::gaussian(sigma).unwrap(), NetworkParams::default(), ChannelParams::default(), EhModel::default()).unwrap();
    c.trials = trials;
    c
}

/// `E[(1 − e^{−A·X/x})^K]` over RF samples: the quantity the order-K coverage
/// sum evaluates exactly.
fn smoothed(xs: &[f64], a: f64, k: i32, x: f64) -> f64 {
    xs.iter().map(|v| (-(-a * v / x).exp_m1()).powi(k)).sum::<f64>() / xs.len() as f64
}

#[test]
fn serving_laplace_against_disk_quadrature() {
    let (net, chan) = (NetworkParams::<f64>::default(), ChannelParams::<f64>::default());
    let p = gaussian_from_beamwidth(PI / 12.0).unwrap();
    let tol = Tolerance::new(1e-15, 1e-12);
    let gain0 = net.pt * p.gm * p.gm * chan.c_l * net.r0.powf(-chan.alpha_l);
    let m = f64::from(chan.m_l);
    for sigma in [p.theta0 / 4.0, p.theta0 / 3.0] {
        let b = BaeModel::gaussian(sigma).unwrap();
        for a in [1e3, 1e6, 1e7] {
            let inner = |x: f64| {
                let w = (p.theta0 * p.theta0 - x * x).max(0.0).sqrt();
                integrate(
                    |y: f64| {
                        let om = (-p.eta * (x * x + y * y)).exp();
                        b.pdf(x).unwrap() * b.pdf(y).unwrap() * (1.0 + a * gain0 * om / m).powf(-m)
                    },
                    -w,
                    w,
                    tol,
                )
                .unwrap()
                .value
            };
            let want = integrate(inner, -p.theta0, p.theta0, tol).unwrap().value;
            let got = analysis::laplace_e0(a, &net, &chan, &p, sigma).unwrap();
            assert!(((got - want) / want).abs() < 1e-6, "sigma={sigma} a={a}: {got} vs {want}");
        }
    }
}

#[test]
fn coverage_equals_order_k_functional_of_simulated_energy() {
    let p = gaussian_from_beamwidth(PI / 12.0).unwrap();
    let m = model(p);
    let spec = CoverageSpec::<f64>::default();
    let eh = EhModel::default();
    for sigma in [0.0, p.theta0 / 3.0] {
        let xs = montecarlo::sample_rf(&mc(p, sigma, 100_000)).unwrap();
        for t in [-40.0, -35.0, -30.0, -25.0] {
            let x = eh.invert_threshold(dbm(t)).unwrap();
            let want = smoothed(&xs, spec.a_const(), 5, x);
            let got = m.coverage(dbm(t), sigma).unwrap().p_ec;
            // standard error of a [0,1] mean is at most 0.5/sqrt(n)
            assert!((got - want).abs() < 4e-3, "sigma={sigma} {t} dBm: {got} vs {want}");
        }
    }
}

#[test]
fn coverage_monotone_in_threshold_and_error() {
    let p = gaussian_from_beamwidth(PI / 12.0).unwrap();
    let m = model(p);
    let sigmas = [0.0, p.theta0 / 4.0, p.theta0 / 2.0, p.theta0];
    let mut prev_row = vec![f64::INFINITY; 9];
    for s in sigmas {
        let mut prev = f64::INFINITY;
        let row: Vec<f64> = (0..9).map(|i| m.coverage(dbm(-60.0 + 5.0 * i as f64), s).unwrap().p_ec).collect();
        for (i, &v) in row.iter().enumerate() {
            assert!(v <= prev + 1e-12, "sigma={s}: not decreasing in threshold");
            assert!(v <= prev_row[i] + 1e-12, "sigma={s}: not decreasing in sigma");
            prev = v;
        }
        prev_row = row;
    }
    assert_eq!(m.coverage(0.011, 0.0).unwrap().p_ec, 0.0);
    assert_eq!(m.coverage(0.0, 0.0).unwrap().p_ec, 1.0);
}

#[test]
fn mean_dc_energy_against_simulated_functional() {
    let p = gaussian_from_beamwidth(PI / 12.0).unwrap();
    let m = model(p);
    let eh = EhModel::default();
    let spec = CoverageSpec::<f64>::default();
    let eps_min = 1e-6;
    let xs = montecarlo::sample_rf(&mc(p, 0.0, 400_000)).unwrap();
    let a = spec.a_const();
    let x_lo = eh.invert_threshold(eps_min).unwrap();
    let x_hi: f64 = 0.0022 + 42.0 / 1500.0;
    let n = 600;
    let h = (x_hi / x_lo).ln() / n as f64;
    let nodes: Vec<(f64, f64)> = (0..=n)
        .map(|i| {
            let x = x_lo * (h * i as f64).exp();
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            (x, w * h * x * eh.slope(x))
        })
        .collect();
    // per-sample contribution, so the spread gives a standard error
    let per: Vec<f64> = xs
        .iter()
        .map(|&v| {
            let s = |x: f64| (-(-a * v / x).exp_m1()).powi(5);
            eps_min * s(x_lo) + nodes.iter().map(|&(x, w)| w * s(x)).sum::<f64>()
        })
        .collect();
    let nf = per.len() as f64;
    let want = per.iter().sum::<f64>() / nf;
    let se = (per.iter().map(|v| (v - want).powi(2)).sum::<f64>() / (nf - 1.0) / nf).sqrt();
    let got = m.avg_dc_energy(eps_min, 0.0).unwrap();
    assert!(se < 0.1 * want);
    assert!((got - want).abs() < 4.0 * se, "{got} vs {want} (se {se})");
    // the hard-threshold mean is well below the order-5 value
    let hard = montecarlo::mean_from_samples(&xs, &eh, EnergyMetric::DcAbove(eps_min)).unwrap();
    assert!(hard.mean < got);
}

#[test]
fn serving_energy_continuous_at_zero_error() {
    let (net, chan) = (NetworkParams::<f64>::default(), ChannelParams::<f64>::default());
    let p = gaussian_from_beamwidth(PI / 12.0).unwrap();
    let e0 = analysis::avg_rf_energy(&net, &chan, &p, 0.0).unwrap();
    let e1 = analysis::avg_rf_energy(&net, &chan, &p, 1e-6).unwrap();
    assert!(((e1.e0 - e0.e0) / e0.e0).abs() < 1e-6);
    assert_eq!(e1.el, e0.el);
    assert_eq!(analysis::rel(&p, 0.0), 0.0);
    assert!(analysis::rel(&p, 1e-6) < 1e-6);
    for a in [1e5, 1e7] {
        let l0 = analysis::laplace_e0(a, &net, &chan, &p, 0.0).unwrap();
        let l1 = analysis::laplace_e0(a, &net, &chan, &p, 1e-4).unwrap();
        assert!((l0 - l1).abs() < 1e-5, "a={a}: {l0} vs {l1}");
    }
}

#[test]
fn mean_rf_energy_against_simulation() {
    let (net, chan) = (NetworkParams::<f64>::default(), ChannelParams::<f64>::default());
    let p = gaussian_from_beamwidth(PI / 12.0).unwrap();
    for sigma in [0.0, p.theta0 / 3.0] {
        let want = analysis::avg_rf_energy(&net, &chan, &p, sigma).unwrap().total();
        let c = mc(p, sigma, 400_000).energy_convention();
        let got = montecarlo::estimate_mean_energy(&c, EnergyMetric::Rf).unwrap();
        assert!((got.mean - want).abs() < 3.0 * got.ci_halfwidth, "sigma={sigma}: {:?} vs {want}", got);
    }
}

#[test]
fn linear_rectifier_has_no_saturation() {
    let p = gaussian_from_beamwidth(PI / 12.0).unwrap();
    let lin = EhModel::Linear { zeta: 0.5 };
    let m = CoverageModel::new(CoverageSpec::default(), NetworkParams::default(), ChannelParams::default(), p, lin).unwrap();
    assert!(m.avg_dc_energy(1e-6, 0.0).is_err());
    // the linear threshold maps straight to an RF level
    let v = m.coverage(dbm(-40.0), 0.0).unwrap().p_ec;
    assert_eq!(v, m.coverage_rf(dbm(-40.0) / 0.5, 0.0).unwrap().p_ec);
}
