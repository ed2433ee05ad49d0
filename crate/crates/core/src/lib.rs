//! Energy coverage and harvested energy of millimeter-wave power transfer
//! networks with beam misalignment.
//!
//! The numerical core is generic over the scalar (`f32` or `f64`); the
//! aliases below fix it for the common cases. The simulator works in `f64`.

pub mod analysis;
pub mod bae;
pub mod error;
pub mod gain_stats;
pub mod montecarlo;
pub mod oracle;
pub mod patterns;
pub mod quad;
pub mod real;
pub mod specfun;

pub use error::{Error, Result};
pub use real::Real;

pub type GaussianPattern64 = patterns::GaussianPattern<f64>;
pub type GaussianPattern32 = patterns::GaussianPattern<f32>;
pub type AntennaPattern64 = patterns::AntennaPattern<f64>;
pub type BaeModel64 = bae::BaeModel<f64>;
pub type BaeModel32 = bae::BaeModel<f32>;
pub type GainDistribution64 = gain_stats::GainDistribution<f64>;
pub type ChannelParams64 = analysis::ChannelParams<f64>;
pub type NetworkParams64 = analysis::NetworkParams<f64>;
pub type EhModel64 = analysis::EhModel<f64>;
pub type CoverageSpec64 = analysis::CoverageSpec<f64>;
pub type CoverageModel64 = analysis::CoverageModel<f64>;
