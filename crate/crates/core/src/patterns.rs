//! Antenna gain models: 3GPP Gaussian, flat-top and uniform linear array.

use crate::error::{Error, Result};
use crate::real::{c, Real};

/// Log10 of the mainlobe-to-sidelobe ratio of the Gaussian model.
pub const SIDELOBE_DB_OVER_10: f64 = 2.028;

/// Wraps an angle into `[−π, π)`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut t = (theta + T::PI()) % two_pi;
    if t < T::zero() {
        t = t + two_pi;
    }
    let t = t - T::PI();
    if t >= T::PI() { -T::PI() } else { t }
}

fn check_angle<T: Real>(func: &'static str, theta: T) -> Result<()> {
    if theta >= -T::PI() && theta < T::PI() {
        Ok(())
    } else {
        Err(Error::domain(func, format!("angle {theta} outside [-pi, pi)")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPattern<T> {
    pub theta0: T,
    pub theta3db: T,
    pub eta: T,
    pub gm: T,
    pub gs: T,
    pub g: T,
}

/// Builds the Gaussian pattern for mainlobe half-width `theta0` (radians).
pub fn gaussian_from_beamwidth<T: Real>(theta0: T) -> Result<GaussianPattern<T>> {
    if !(theta0 > T::zero()) || !theta0.is_finite() {
        return Err(Error::domain("gaussian_from_beamwidth", format!("theta0 must be positive, got {theta0}")));
    }
    let k: T = c(SIDELOBE_DB_OVER_10);
    let ten: T = c(10.0);
    let eta = k * ten.ln() / (theta0 * theta0);
    let gm = T::PI() * ten.powf(k) / (c::<T>(42.6443) * theta0 + T::PI());
    let g = ten.powf(-k);
    Ok(GaussianPattern {
        theta0,
        theta3db: theta0 / c(2.6),
        eta,
        gm,
        gs: gm * (-eta * theta0 * theta0).exp(),
        g,
    })
}

impl<T: Real> GaussianPattern<T> {
    /// The model was fitted for half-widths between π/24 and π/6.
    pub fn outside_design_range(&self) -> bool {
        let lo = T::PI() / c(24.0) * c(1.0 - 1e-12);
        let hi = T::PI() / c(6.0) * c(1.0 + 1e-12);
        self.theta0 < lo || self.theta0 > hi
    }

    pub fn gain(&self, theta: T) -> Result<T> {
        Ok(self.gm * self.normalized_gain(theta)?)
    }

    /// Gain divided by `gm`; lies in `[g, 1]`.
    pub fn normalized_gain(&self, theta: T) -> Result<T> {
        check_angle("normalized_gain", theta)?;
        Ok(self.normalized_gain_unchecked(theta))
    }

    #[inline]
    pub(crate) fn normalized_gain_unchecked(&self, theta: T) -> T {
        if theta.abs() <= self.theta0 {
            (-self.eta * theta * theta).exp().max(self.g)
        } else {
            self.g
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatTopPattern<T> {
    pub gm: T,
    pub gs: T,
    pub theta3db: T,
}

impl<T: Real> FlatTopPattern<T> {
    pub fn new(gm: T, gs: T, theta3db: T) -> Result<Self> {
        if !(gm > gs && gs > T::zero()) {
            return Err(Error::InvalidParameter { field: "flat_top", msg: format!("need gm > gs > 0 (gm={gm}, gs={gs})") });
        }
        Ok(FlatTopPattern { gm, gs, theta3db })
    }

    /// Same peak gain, sidelobe gain and 3 dB width as `p`.
    pub fn matching(p: &GaussianPattern<T>) -> Self {
        FlatTopPattern { gm: p.gm, gs: p.gs, theta3db: p.theta3db }
    }

    pub fn gain(&self, theta: T) -> Result<T> {
        check_angle("gain", theta)?;
        Ok(if theta.abs() <= self.theta3db { self.gm } else { self.gs })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UlaPattern {
    pub na: u32,
}

impl UlaPattern {
    pub fn new(na: u32) -> Result<Self> {
        if na < 2 {
            return Err(Error::InvalidParameter { field: "na", msg: format!("need at least 2 elements, got {na}") });
        }
        Ok(UlaPattern { na })
    }

    /// Element count giving a mainlobe half-width of about `theta0`.
    pub fn for_beamwidth<T: Real>(theta0: T) -> Result<Self> {
        let n = (c::<T>(5.64) / theta0).round().to_u32().unwrap_or(0);
        UlaPattern::new(n)
    }

    pub fn gain<T: Real>(&self, theta: T) -> Result<T> {
        check_angle("gain", theta)?;
        let n: T = c(f64::from(self.na));
        let half = theta * c(0.5);
        let s = half.sin();
        if s.abs() < c(1e-8) {
            // N·(1 − (N²−1)θ²/12) near the peak
            return Ok(n * (T::one() - (n * n - T::one()) * theta * theta / c(12.0)));
        }
        let num = (n * half).sin();
        Ok(n * num * num / (n * n * s * s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AntennaPattern<T> {
    Gaussian(GaussianPattern<T>),
    FlatTop(FlatTopPattern<T>),
    Ula(UlaPattern),
}

impl<T: Real> AntennaPattern<T> {
    pub fn gain(&self, theta: T) -> Result<T> {
        match self {
            AntennaPattern::Gaussian(p) => p.gain(theta),
            AntennaPattern::FlatTop(p) => p.gain(theta),
            AntennaPattern::Ula(p) => p.gain(theta),
        }
    }

    pub fn peak_gain(&self) -> T {
        match self {
            AntennaPattern::Gaussian(p) => p.gm,
            AntennaPattern::FlatTop(p) => p.gm,
            AntennaPattern::Ula(p) => c(f64::from(p.na)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AntennaPattern::Gaussian(_) => "gaussian",
            AntennaPattern::FlatTop(_) => "flattop",
            AntennaPattern::Ula(_) => "ula",
        }
    }
}

/// Free-function form of [`AntennaPattern::gain`].
pub fn gain<T: Real>(pattern: &AntennaPattern<T>, theta: T) -> Result<T> {
    pattern.gain(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, Tolerance};
    use std::f64::consts::PI;

    #[test]
    fn table_values() {
        let p = gaussian_from_beamwidth(PI / 24.0).unwrap();
        assert!((p.eta - 272.5250).abs() < 1e-3);
        assert!((p.gm - 38.4103).abs() < 1e-3);
        let p = gaussian_from_beamwidth(PI / 6.0).unwrap();
        assert!((p.theta3db - 0.2014).abs() < 1e-3);
        assert!(gaussian_from_beamwidth(0.0f64).is_err());
        assert!(gaussian_from_beamwidth(PI / 3.0).unwrap().outside_design_range());
        assert!(!p.outside_design_range());
    }

    #[test]
    fn gaussian_landmarks() {
        let p = gaussian_from_beamwidth(PI / 12.0).unwrap();
        assert_eq!(p.gain(0.0).unwrap(), p.gm);
        assert!((p.gain(p.theta3db).unwrap() / p.gm - 10f64.powf(-0.3)).abs() < 1e-12);
        assert!((p.normalized_gain(p.theta0).unwrap() - p.g).abs() < 1e-15);
        assert_eq!(p.normalized_gain(0.5).unwrap(), p.g);
        assert!((p.g - 9.3756e-3).abs() < 1e-7);
        assert!((p.gs - p.g * p.gm).abs() < 1e-12);
        assert!(p.gain(PI).is_err());
        assert!(p.gain(-PI).is_ok());
    }

    #[test]
    fn ula_first_null_and_peak() {
        let u = UlaPattern::new(11).unwrap();
        assert!(u.gain(2.0 * PI / 11.0).unwrap().abs() < 1e-12);
        assert_eq!(u.gain(0.0f64).unwrap(), 11.0);
        assert!((u.gain(1e-9f64).unwrap() - 11.0).abs() < 1e-9);
        for (d, n) in [(6.0, 11), (12.0, 22), (24.0, 43)] {
            assert_eq!(UlaPattern::for_beamwidth(PI / d).unwrap().na, n);
        }
        assert!(UlaPattern::new(1).is_err());
    }

    #[test]
    fn ula_integrates_to_two_pi() {
        for na in [11u32, 22, 43] {
            let u = UlaPattern::new(na).unwrap();
            let v = integrate(|t: f64| u.gain(t).unwrap(), -PI, PI - 1e-15, Tolerance::new(1e-12, 1e-10)).unwrap().value;
            assert!((v / (2.0 * PI) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn wrap() {
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-12);
        assert_eq!(wrap_angle(PI), -PI);
        assert!((wrap_angle(-7.0 * PI) + PI).abs() < 1e-12);
        assert!((wrap_angle(0.3f64) - 0.3).abs() < 1e-15);
    }
}
