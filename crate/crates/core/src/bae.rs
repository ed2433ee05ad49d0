//! Beam-alignment-error laws on `[−π, π)`.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::real::{c, to_f64, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BaeModel<T> {
    Perfect,
    TruncatedGaussian { sigma: T },
    Uniform,
}

impl<T: Real> BaeModel<T> {
    /// Truncated Gaussian with standard deviation `sigma`; `sigma = 0` gives
    /// [`BaeModel::Perfect`].
    pub fn gaussian(sigma: T) -> Result<Self> {
        if sigma < T::zero() || !sigma.is_finite() {
            return Err(Error::domain("BaeModel::gaussian", format!("sigma must be finite and >= 0, got {sigma}")));
        }
        Ok(if sigma == T::zero() { BaeModel::Perfect } else { BaeModel::TruncatedGaussian { sigma } })
    }

    /// `erf(π/(√2σ))`, the truncation normaliser.
    pub fn truncation_mass(sigma: T) -> T {
        (T::PI() / (T::SQRT_2() * sigma)).erf()
    }

    pub fn pdf(&self, psi: T) -> Result<T> {
        if !(psi >= -T::PI() && psi < T::PI()) {
            return Err(Error::domain("bae_pdf", format!("angle {psi} outside [-pi, pi)")));
        }
        match *self {
            BaeModel::Perfect => Err(Error::NoDensity("perfect alignment")),
            BaeModel::Uniform => Ok(T::one() / (T::PI() + T::PI())),
            BaeModel::TruncatedGaussian { sigma } => {
                let var = sigma * sigma;
                Ok((-psi * psi / (var + var)).exp() / ((T::PI() * (var + var)).sqrt() * Self::truncation_mass(sigma)))
            }
        }
    }

    /// Probability that the error falls inside the mainlobe `|ψ| ≤ θ0`.
    pub fn mainlobe_prob(&self, theta0: T) -> T {
        match *self {
            BaeModel::Perfect => T::one(),
            BaeModel::Uniform => theta0 / T::PI(),
            BaeModel::TruncatedGaussian { sigma } => {
                (theta0 / (T::SQRT_2() * sigma)).erf() / Self::truncation_mass(sigma)
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        match *self {
            BaeModel::Perfect => T::zero(),
            BaeModel::Uniform => c(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)),
            BaeModel::TruncatedGaussian { sigma } => {
                let s = to_f64(sigma);
                loop {
                    let z: f64 = StandardNormal.sample(rng);
                    let psi = z * s;
                    if (-std::f64::consts::PI..std::f64::consts::PI).contains(&psi) {
                        return c(psi);
                    }
                }
            }
        }
    }
}

/// Free-function forms.
pub fn bae_pdf<T: Real>(model: &BaeModel<T>, psi: T) -> Result<T> {
    model.pdf(psi)
}

pub fn mainlobe_prob<T: Real>(model: &BaeModel<T>, theta0: T) -> T {
    model.mainlobe_prob(theta0)
}

pub fn sample_bae<T: Real, R: Rng + ?Sized>(model: &BaeModel<T>, rng: &mut R) -> T {
    model.sample(rng)
}
