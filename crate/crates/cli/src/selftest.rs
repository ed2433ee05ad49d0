use std::f64::consts::PI;

use mmwpt::analysis::{ChannelParams, CoverageSpec, EhModel, FieldLaplace, NetworkParams};
use mmwpt::bae::BaeModel;
use mmwpt::gain_stats;
use mmwpt::oracle;
use mmwpt::patterns::gaussian_from_beamwidth;
use mmwpt::quad::{integrate, Tolerance};
use mmwpt::real::{c, to_f64};
use mmwpt::specfun::{self, FoxHSpec, Truncation};
use mmwpt::{Real, Result};

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn check(name: &'static str, worst: Result<f64>, tol: f64) -> Check {
    match worst {
        Ok(w) => Check { name, pass: w <= tol, detail: format!("max deviation {w:.2e} (tol {tol:.0e})") },
        Err(e) => Check { name, pass: false, detail: format!("error: {e}") },
    }
}

const ERF_REF: [(f64, f64); 4] = [(0.1, 0.1124629160182848984), (0.5, 0.52049987781304653768), (1.7, 0.98379045859077456084), (3.3, 0.99999694229020356183)];
const GAMMA_REF: [(f64, f64); 3] = [(0.3, 2.9915689876875907446), (4.2, 7.7566895357931794455), (10.5, 1133278.3889487855673)];

/// Runs the oracle suite with scalar type `T`.
pub fn run<T: Real>() -> Vec<Check> {
    let mut out = Vec::new();

    out.push(check(
        "pattern parameters from beamwidth",
        (|| {
            let table = [(24.0, 0.0503, 272.5250, 38.4103), (12.0, 0.1007, 68.1313, 23.4227), (6.0, 0.2014, 17.0328, 13.1559)];
            let mut w: f64 = 0.0;
            for (d, t3, eta, gm) in table {
                let p = gaussian_from_beamwidth::<T>(c(PI / d))?;
                w = w.max((to_f64(p.theta3db) - t3).abs()).max((to_f64(p.eta) - eta).abs()).max((to_f64(p.gm) - gm).abs());
            }
            Ok(w)
        })(),
        1e-3,
    ));

    out.push(check(
        "erf / gamma reference values",
        (|| {
            let mut w: f64 = 0.0;
            for (x, v) in ERF_REF {
                w = w.max(rel(to_f64(specfun::erf::<T>(c(x))), v));
            }
            for (x, v) in GAMMA_REF {
                w = w.max(rel(to_f64(specfun::gamma::<T>(c(x))?), v));
            }
            Ok(w)
        })(),
        1e-14,
    ));

    out.push(check(
        "BAE density normalization",
        (|| {
            let mut w: f64 = 0.0;
            for s in [0.05, 0.5, 2.0] {
                let m = BaeModel::<T>::gaussian(c(s))?;
                let pdf = |x: f64| to_f64(m.pdf(c(x)).unwrap_or(T::nan()));
                let v = integrate(pdf, -PI, PI - 1e-15, Tolerance::new(1e-14, 1e-12))?.value;
                w = w.max((v - 1.0).abs());
            }
            Ok(w)
        })(),
        1e-9,
    ));

    out.push(check(
        "mainlobe probabilities 0.9973 / 0.9545",
        (|| {
            let mut w: f64 = 0.0;
            for d in [24.0, 12.0, 6.0] {
                let t0: T = c(PI / d);
                w = w.max((to_f64(BaeModel::gaussian(t0 / c(3.0))?.mainlobe_prob(t0)) - 0.9973).abs());
                w = w.max((to_f64(BaeModel::gaussian(t0 / c(2.0))?.mainlobe_prob(t0)) - 0.9545).abs());
            }
            Ok(w)
        })(),
        3e-4,
    ));

    out.push(check(
        "mainlobe mass by quadrature",
        (|| {
            let p = gaussian_from_beamwidth::<T>(c(PI / 12.0))?;
            let mut w: f64 = 0.0;
            for r in [0.25, 0.5, 1.0] {
                let m = BaeModel::gaussian(p.theta0 * c(r))?;
                let d = gain_stats::single_gain_pdf(&p, &m);
                let seg = d.segments[0].terms[0].partial_moment_quadrature(p.g, T::one(), T::zero())?;
                w = w.max((to_f64(seg) - to_f64(m.mainlobe_prob(p.theta0))).abs());
            }
            Ok(w)
        })(),
        1e-6,
    ));

    out.push(check(
        "cascaded PDF total mass",
        (|| {
            let mut w: f64 = 0.0;
            for d in [24.0, 12.0, 6.0] {
                let p = gaussian_from_beamwidth::<T>(c(PI / d))?;
                for m in [BaeModel::Uniform, BaeModel::gaussian(p.theta0 / c(3.0))?] {
                    let q = gain_stats::gain_moment_quadrature(&gain_stats::cascaded_pdf_exact(&p, &m), c(1e-300))?;
                    w = w.max((to_f64(q) - 1.0).abs());
                }
            }
            Ok(w)
        })(),
        1e-6,
    ));

    out.push(check(
        "Fox H integral vs Mellin-Barnes",
        (|| {
            let mut w: f64 = 0.0;
            for rho in [2.0, 7.0] {
                for alpha in [2.1, 2.92] {
                    for z in [0.1, 1.0, 5.0] {
                        let a = specfun::fox_h_20_02(FoxHSpec::<T>::new(c(rho), c(1.0 / alpha), c(z)))?;
                        w = w.max(rel(to_f64(a), oracle::fox_h_mellin_barnes(rho, alpha, z)?));
                    }
                }
            }
            Ok(w)
        })(),
        1e-8,
    ));

    out.push(check(
        "Fox H scaling series",
        (|| {
            let s = specfun::fox_h_scaling_series::<T>(c(0.8), c(0.5), c(2.0), c(2.92), Truncation::default())?;
            let d = specfun::fox_h_20_02(FoxHSpec::<T>::new(c(2.0), c(1.0 / 2.92), c(0.4)))?;
            Ok(rel(to_f64(s.value), to_f64(d)))
        })(),
        1e-6,
    ));

    out.push(check(
        "2F1 Euler integral vs power series",
        (|| {
            let mut w: f64 = 0.0;
            for (a, b, z) in [(3.0, 0.96, 5.0), (2.0, 1.713, 0.7)] {
                let v = specfun::hyp2f1_euler::<T>(c(a), c(b), c(z))?;
                w = w.max((to_f64(v) - oracle::hyp2f1_series(a, b, 1.0 + b, -z)).abs());
            }
            Ok(w)
        })(),
        1e-9,
    ));

    out.push(check(
        "far-field moment vs Whittaker W",
        (|| {
            let mut w: f64 = 0.0;
            for alpha in [2.1, 2.92] {
                w = w.max(rel(to_f64(specfun::far_field_moment::<T>(c(alpha), c(0.0071))?), oracle::far_field_whittaker(alpha, 0.0071)));
            }
            Ok(w)
        })(),
        1e-8,
    ));

    out.push(check(
        "field Laplace series vs quadrature",
        (|| {
            let (net, chan) = (NetworkParams::<T>::default(), ChannelParams::<T>::default());
            let p = gaussian_from_beamwidth::<T>(c(PI / 12.0))?;
            let f = FieldLaplace::new(&net, &chan, &p, Truncation::default())?;
            let eps = EhModel::<T>::default().invert_threshold(c(1e-7))?;
            let a = CoverageSpec::<T>::default().a_k(1, eps);
            let (net64, chan64) = (NetworkParams::<f64>::default(), ChannelParams::<f64>::default());
            let p64 = gaussian_from_beamwidth(PI / 12.0)?;
            let mut w: f64 = 0.0;
            for los in [true, false] {
                let s = to_f64(f.eval(a, los)?.value);
                w = w.max(rel(s, oracle::laplace_field_quadrature(to_f64(a), &net64, &chan64, &p64, los)?));
            }
            Ok(w)
        })(),
        1e-4,
    ));

    out
}

pub fn report(label: &str, checks: &[Check]) -> bool {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    println!("selftest ({label})");
    for c in checks {
        println!("  {:<width$}  {}  {}", c.name, if c.pass { "PASS" } else { "FAIL" }, c.detail);
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    println!("{} passed, {} failed", checks.len() - failed, failed);
    failed == 0
}
