//! Independent reference evaluations used to cross-check the production
//! paths. None of the analysis code depends on this module.

use num_complex::Complex64;

use crate::analysis::{ChannelParams, NetworkParams};
use crate::error::Result;
use crate::patterns::GaussianPattern;
use crate::quad::{self, Tolerance};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(z) for Re z > 0 (Lanczos, g = 7).
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

fn digamma(x: f64) -> f64 {
    let mut x = x;
    let mut acc = 0.0;
    while x < 8.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let x2 = 1.0 / (x * x);
    acc + x.ln() - 0.5 / x - x2 * (1.0 / 12.0 - x2 * (1.0 / 120.0 - x2 * (1.0 / 252.0 - x2 / 240.0)))
}

/// `H_{0,2}^{2,0}[z | (ρ,1),(0,1/α)]` from its Mellin–Barnes integral
/// `(1/2πi)∫ Γ(ρ+s)Γ(s/α) z^{−s} ds` along a vertical line through the
/// saddle of the integrand.
pub fn fox_h_mellin_barnes(rho: f64, alpha: f64, z: f64) -> Result<f64> {
    let lz = z.ln();
    // saddle: ψ(ρ+c) + ψ(c/α)/α = ln z, left side increasing in c
    let dphi = |c: f64| digamma(rho + c) + digamma(c / alpha) / alpha - lz;
    let (mut lo, mut hi) = (1e-8, 1.0);
    while dphi(hi) < 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if dphi(mid) < 0.0 { lo = mid } else { hi = mid }
    }
    let c = 0.5 * (lo + hi);
    let log_kernel = |tau: f64| {
        let s = Complex64::new(c, tau);
        ln_gamma_complex(s + rho) + ln_gamma_complex(s / alpha) - s * lz
    };
    let peak = log_kernel(0.0).re;
    let integrand = |tau: f64| (log_kernel(tau) - peak).exp().re;
    let mut edge = 1.0;
    while (log_kernel(edge).re - peak) > -80.0 {
        edge *= 1.5;
    }
    // the kernel is normalised to 1 at τ = 0, so an absolute target is meaningful
    let tol = Tolerance::new(1e-15, 1e-13);
    let v = quad::integrate(integrand, 0.0, edge, tol)?.value;
    Ok(v * peak.exp() / std::f64::consts::PI)
}

/// ₂F₁(a, b; c; w) by its power series, with the Pfaff transformation for
/// `w < −1/2`.
pub fn hyp2f1_series(a: f64, b: f64, c: f64, w: f64) -> f64 {
    if w < -0.5 {
        return (1.0 - w).powf(-a) * hyp2f1_series(a, c - b, c, w / (w - 1.0));
    }
    assert!(w.abs() < 1.0, "series needs |w| < 1");
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..20_000 {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * w;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Kummer's ₁F₁(a; b; x) by its power series.
pub fn hyp1f1_series(a: f64, b: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..10_000 {
        let n = n as f64;
        term *= (a + n) / ((b + n) * (n + 1.0)) * x;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Whittaker `W_{κ,μ}(x)` from the two Kummer `M` solutions (2μ not an integer).
pub fn whittaker_w(kappa: f64, mu: f64, x: f64) -> f64 {
    let m = |mu: f64| (-x / 2.0).exp() * x.powf(mu + 0.5) * hyp1f1_series(mu - kappa + 0.5, 1.0 + 2.0 * mu, x);
    let g = libm::tgamma;
    g(-2.0 * mu) / g(0.5 - mu - kappa) * m(mu) + g(2.0 * mu) / g(0.5 + mu - kappa) * m(-mu)
}

/// `∫₁^∞ r^{1−α} e^{−βr} dr` through the Whittaker identity.
pub fn far_field_whittaker(alpha: f64, beta: f64) -> f64 {
    let kappa = -(alpha - 1.0) / 2.0;
    let mu = (2.0 - alpha) / 2.0;
    beta.powf((alpha - 1.0) / 2.0 - 1.0) * (-beta / 2.0).exp() * whittaker_w(kappa, mu, beta)
}

/// Exponential integral E₁(x), series for x ≤ 1 and continued fraction above.
pub fn exp_integral_e1(x: f64) -> f64 {
    if x <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for n in 1..200 {
            term *= -x / n as f64;
            sum -= term / n as f64;
            if term.abs() < 1e-18 {
                break;
            }
        }
        -0.577_215_664_901_532_9 - x.ln() + sum
    } else {
        let mut tail = x;
        for n in (1..200).rev() {
            let n = n as f64;
            tail = x + n / (1.0 + n / tail);
        }
        (-x).exp() / tail
    }
}

/// Laplace transform of the LOS or NLOS field energy by nested quadrature:
/// an outer integral over distance and an inner expectation over the
/// uniform-error cascaded gain, with Gamma fading averaged in closed form.
pub fn laplace_field_quadrature(
    a: f64,
    net: &NetworkParams<f64>,
    chan: &ChannelParams<f64>,
    p: &GaussianPattern<f64>,
    los: bool,
) -> Result<f64> {
    if a == 0.0 || net.lambda_t == 0.0 {
        return Ok(1.0);
    }
    let (alpha, cc, m) = if los { (chan.alpha_l, chan.c_l, chan.m_l) } else { (chan.alpha_n, chan.c_n, chan.m_n) };
    let m = f64::from(m);
    let p0 = p.theta0 / std::f64::consts::PI;
    let g = p.g;
    let b = -g.ln();
    let k = a * net.pt * p.gm * p.gm * cc;
    let inner_tol = Tolerance::new(1e-16, 1e-12);
    // 1 − E_ω[(1 + uω/m)^{−m}]
    let one_minus = |u: f64| -> Result<f64> {
        let miss = |om: f64| -(-m * (u * om / m).ln_1p()).exp_m1();
        let mut v = (1.0 - p0).powi(2) * miss(g * g);
        // Ω = g·e^{−w²} on the sidelobe piece
        let side = |w: f64| (1.0 - p0) / (std::f64::consts::PI * p.eta.sqrt()) * 2.0 * miss(g * (-w * w).exp());
        v += quad::integrate(side, 0.0, b.sqrt(), inner_tol)?.value;
        let main = |l: f64| miss(l.exp()) / (4.0 * std::f64::consts::PI * p.eta);
        v += quad::integrate(main, -b, 0.0, inner_tol)?.value;
        Ok(v)
    };
    let beta = chan.beta;
    let mut err = None;
    // r = e^v
    let outer = |v: f64| {
        let r = v.exp();
        let w = if los { (-beta * r).exp() } else { -(-beta * r).exp_m1() };
        match one_minus(k * r.powf(-alpha)) {
            Ok(x) => x * w * r * r,
            Err(e) => {
                err.get_or_insert(e);
                0.0
            }
        }
    };
    let vc = k.ln() / alpha;
    let mut pts: Vec<f64> = [-40.0, -10.0, -5.0, -2.0, 0.0, 2.0, 5.0].iter().map(|d| vc + d).collect();
    pts.push((1.0 / beta).ln());
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.push(f64::INFINITY);
    let integral = quad::integrate_pieces(outer, &pts, Tolerance::new(1e-300, 1e-11))?.value;
    if let Some(e) = err {
        return Err(e);
    }
    Ok((-2.0 * std::f64::consts::PI * net.lambda_t * integral).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lanczos_matches_real_gamma() {
        for &x in &[0.3, 1.0, 2.5, 7.25, 30.0] {
            let want = libm::lgamma(x);
            assert!((ln_gamma_complex(Complex64::new(x, 0.0)).re - want).abs() < 1e-12);
        }
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        let y = 3.0f64;
        let got = 2.0 * ln_gamma_complex(Complex64::new(0.5, y)).re;
        let want = (std::f64::consts::PI / (std::f64::consts::PI * y).cosh()).ln();
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn mellin_barnes_small_argument_limit() {
        // H → α·Γ(ρ) as z → 0
        let h = fox_h_mellin_barnes(2.0, 1.5, 1e-9).unwrap();
        assert!((h - 1.5).abs() < 1e-4, "{h}");
    }

    #[test]
    fn series_oracles() {
        assert!((hyp2f1_series(1.0, 1.0, 2.0, -1.0 + 1e-12) - std::f64::consts::LN_2).abs() < 1e-9);
        assert!((hyp1f1_series(1.0, 1.0, 0.7) - 0.7f64.exp()).abs() < 1e-14);
        assert!((exp_integral_e1(1.0) - 0.219_383_934_395_520_3).abs() < 1e-13);
        assert!((exp_integral_e1(3.0) - 0.013_048_381_094_197_04).abs() < 1e-14);
    }
}
