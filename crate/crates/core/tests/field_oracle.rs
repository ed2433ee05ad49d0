use std::f64::consts::PI;

use mmwpt::analysis::{ChannelParams, CoverageSpec, EhModel, FieldLaplace, NetworkParams};
use mmwpt::oracle::laplace_field_quadrature;
use mmwpt::patterns::gaussian_from_beamwidth;
use mmwpt::specfun::Truncation;

fn dbm(x: f64) -> f64 {
    10f64.powf(x / 10.0) * 1e-3
}

#[test]
fn series_matches_double_quadrature() {
    let net = NetworkParams::default();
    let chan = ChannelParams::default();
    let eh = EhModel::default();
    let spec = CoverageSpec::<f64>::default();
    let mut worst: f64 = 0.0;
    for d in [24.0, 12.0, 6.0] {
        let p = gaussian_from_beamwidth(PI / d).unwrap();
        let f = FieldLaplace::new(&net, &chan, &p, Truncation::default()).unwrap();
        for th in [-60.0, -40.0, -25.0] {
            let eps = eh.invert_threshold(dbm(th)).unwrap();
            for k in [1, 3, 5] {
                let a = spec.a_k(k, eps);
                for los in [true, false] {
                    let s = f.eval(a, los).unwrap().value;
                    let q = laplace_field_quadrature(a, &net, &chan, &p, los).unwrap();
                    let r = ((s - q) / q).abs();
                    worst = worst.max(r);
                    assert!(r < 1e-4, "theta0=pi/{d} th={th} k={k} los={los}: {s} vs {q}");
                }
            }
        }
    }
    println!("worst relative deviation {worst:e}");
}
