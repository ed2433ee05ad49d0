use std::f64::consts::PI;
use std::path::Path;

use anyhow::{bail, Context, Result};
use mmwpt::analysis::{ChannelParams, CoverageSpec, EhModel, NetworkParams};
use mmwpt::patterns::{gaussian_from_beamwidth, AntennaPattern, FlatTopPattern, GaussianPattern, UlaPattern};
use mmwpt::quad::Tolerance;
use mmwpt::specfun::Truncation;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AntennaKind {
    Gaussian,
    Flattop,
    Ula,
}

impl AntennaKind {
    pub fn name(self) -> &'static str {
        match self {
            AntennaKind::Gaussian => "gaussian",
            AntennaKind::Flattop => "flattop",
            AntennaKind::Ula => "ula",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Analytic,
    Mc,
    Both,
}

impl Engine {
    pub fn analytic(self) -> bool {
        matches!(self, Engine::Analytic | Engine::Both)
    }
    pub fn mc(self) -> bool {
        matches!(self, Engine::Mc | Engine::Both)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnergyAxis {
    Sigma,
    Lambda,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EhKind {
    Linear,
    Nonlinear,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ChannelCfg {
    pub alpha_l: f64,
    pub alpha_n: f64,
    pub c_l: f64,
    pub c_n: f64,
    pub m_l: u32,
    pub m_n: u32,
    pub beta: f64,
}

impl Default for ChannelCfg {
    fn default() -> Self {
        let c = ChannelParams::<f64>::default();
        ChannelCfg { alpha_l: c.alpha_l, alpha_n: c.alpha_n, c_l: c.c_l, c_n: c.c_n, m_l: c.m_l, m_n: c.m_n, beta: c.beta }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NetworkCfg {
    pub lambda_t: f64,
    pub r0: f64,
    pub pt: f64,
}

impl Default for NetworkCfg {
    fn default() -> Self {
        let n = NetworkParams::<f64>::default();
        NetworkCfg { lambda_t: n.lambda_t, r0: n.r0, pt: n.pt }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EhCfg {
    pub pm: f64,
    pub pa: f64,
    pub pb: f64,
    /// Efficiency of the linear model.
    pub zeta: f64,
}

impl Default for EhCfg {
    fn default() -> Self {
        EhCfg { pm: 0.01, pa: 1500.0, pb: 0.0022, zeta: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoverageCfg {
    pub k_order: u32,
    pub series_tol: f64,
    pub series_window: usize,
    pub t_max: usize,
    pub quad_abs: f64,
    pub quad_rel: f64,
}

impl Default for CoverageCfg {
    fn default() -> Self {
        CoverageCfg { k_order: 5, series_tol: 1e-10, series_window: 3, t_max: 60, quad_abs: 1e-10, quad_rel: 1e-8 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McCfg {
    pub trials: u64,
    pub seed: u64,
    /// Field radius in m; `null` selects the tail-energy heuristic.
    pub r_max: Option<f64>,
}

impl Default for McCfg {
    fn default() -> Self {
        McCfg { trials: 100_000, seed: 1, r_max: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: String,
    pub engine: Engine,
    pub antenna: AntennaKind,
    /// Mainlobe half-width in radians.
    pub theta0: f64,
    /// BAE standard deviations as multiples of `theta0`.
    pub sigma_over_theta0: Vec<f64>,
    pub thresholds_dbm: Vec<f64>,
    pub energy_axis: EnergyAxis,
    pub lambdas: Vec<f64>,
    pub antennas: Vec<AntennaKind>,
    pub eh_variants: Vec<EhKind>,
    /// Floor of the average DC energy, W.
    pub eps_min_w: f64,
    /// Beamwidths and absolute BAE grid of the REL sweep, radians.
    pub rel_theta0: Vec<f64>,
    pub rel_sigmas: Vec<f64>,
    pub pdf_points: usize,
    /// Element spacing ratio; recorded, not used by the array model.
    pub kappa: f64,
    pub channel: ChannelCfg,
    pub network: NetworkCfg,
    pub eh: EhCfg,
    pub coverage: CoverageCfg,
    pub montecarlo: McCfg,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            scenario: "default".into(),
            engine: Engine::Both,
            antenna: AntennaKind::Gaussian,
            theta0: PI / 12.0,
            sigma_over_theta0: vec![0.0, 0.25, 1.0 / 3.0, 0.5, 1.0],
            thresholds_dbm: (0..=10).map(|i| -60.0 + 5.0 * f64::from(i)).collect(),
            energy_axis: EnergyAxis::Sigma,
            lambdas: vec![1e-5, 2e-5, 5e-5, 1e-4, 2e-4, 5e-4, 1e-3],
            antennas: vec![AntennaKind::Gaussian, AntennaKind::Flattop, AntennaKind::Ula],
            eh_variants: vec![EhKind::Linear, EhKind::Nonlinear],
            eps_min_w: 1e-6,
            rel_theta0: vec![PI / 24.0, PI / 12.0, PI / 6.0],
            rel_sigmas: (0..=20).map(|i| 0.025 * f64::from(i)).collect(),
            pdf_points: 400,
            kappa: 0.25,
            channel: ChannelCfg::default(),
            network: NetworkCfg::default(),
            eh: EhCfg::default(),
            coverage: CoverageCfg::default(),
            montecarlo: McCfg::default(),
        }
    }
}

fn check_grid(path: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        bail!("{path}: grid is empty");
    }
    if v.iter().any(|x| !x.is_finite()) {
        bail!("{path}: grid has a non-finite value");
    }
    if v.windows(2).any(|w| w[1] <= w[0]) {
        bail!("{path}: grid must be strictly increasing");
    }
    Ok(())
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn validate(&self) -> Result<()> {
        check_grid("sigma_over_theta0", &self.sigma_over_theta0)?;
        check_grid("thresholds_dbm", &self.thresholds_dbm)?;
        check_grid("lambdas", &self.lambdas)?;
        check_grid("rel_theta0", &self.rel_theta0)?;
        check_grid("rel_sigmas", &self.rel_sigmas)?;
        if self.sigma_over_theta0[0] < 0.0 || self.rel_sigmas[0] < 0.0 {
            bail!("sigma_over_theta0: standard deviations must be >= 0");
        }
        if self.lambdas[0] < 0.0 {
            bail!("lambdas: densities must be >= 0");
        }
        if !(self.theta0 > 0.0 && self.theta0 < PI) {
            bail!("theta0: must lie in (0, pi), got {}", self.theta0);
        }
        if self.antennas.is_empty() {
            bail!("antennas: list is empty");
        }
        if self.eh_variants.is_empty() {
            bail!("eh_variants: list is empty");
        }
        if self.coverage.k_order == 0 {
            bail!("coverage.k_order: must be >= 1");
        }
        if self.montecarlo.trials == 0 {
            bail!("montecarlo.trials: must be >= 1");
        }
        if !(self.eps_min_w >= 0.0 && self.eps_min_w < self.eh.pm) {
            bail!("eps_min_w: must lie in [0, eh.pm)");
        }
        if !(self.eh.pm > 0.0 && self.eh.pa > 0.0 && self.eh.pb > 0.0) {
            bail!("eh: pm, pa and pb must be positive");
        }
        if !(self.eh.zeta > 0.0 && self.eh.zeta <= 1.0) {
            bail!("eh.zeta: must lie in (0, 1]");
        }
        self.chan().validate().context("channel")?;
        self.net().validate().context("network")?;
        Ok(())
    }

    pub fn chan(&self) -> ChannelParams<f64> {
        let c = &self.channel;
        ChannelParams { alpha_l: c.alpha_l, alpha_n: c.alpha_n, c_l: c.c_l, c_n: c.c_n, m_l: c.m_l, m_n: c.m_n, beta: c.beta }
    }

    pub fn net(&self) -> NetworkParams<f64> {
        NetworkParams { lambda_t: self.network.lambda_t, r0: self.network.r0, pt: self.network.pt }
    }

    pub fn eh_model(&self, kind: EhKind) -> EhModel<f64> {
        match kind {
            EhKind::Nonlinear => EhModel::Nonlinear { pm: self.eh.pm, pa: self.eh.pa, pb: self.eh.pb },
            EhKind::Linear => EhModel::Linear { zeta: self.eh.zeta },
        }
    }

    pub fn coverage_spec(&self) -> CoverageSpec<f64> {
        let c = &self.coverage;
        CoverageSpec {
            k_order: c.k_order,
            series: Truncation { tol: c.series_tol, window: c.series_window, t_max: c.t_max },
            quad_tol: Tolerance::new(c.quad_abs, c.quad_rel),
        }
    }

    pub fn gaussian(&self) -> Result<GaussianPattern<f64>> {
        let p = gaussian_from_beamwidth(self.theta0)?;
        if p.outside_design_range() {
            eprintln!("warning: theta0 = {} lies outside [pi/24, pi/6]", self.theta0);
        }
        Ok(p)
    }

    pub fn pattern(&self, kind: AntennaKind) -> Result<AntennaPattern<f64>> {
        let g = self.gaussian()?;
        Ok(match kind {
            AntennaKind::Gaussian => AntennaPattern::Gaussian(g),
            AntennaKind::Flattop => AntennaPattern::FlatTop(FlatTopPattern::matching(&g)),
            AntennaKind::Ula => AntennaPattern::Ula(UlaPattern::for_beamwidth(self.theta0)?),
        })
    }

    pub fn sigmas(&self) -> Vec<f64> {
        self.sigma_over_theta0.iter().map(|r| r * self.theta0).collect()
    }
}

pub fn dbm_to_w(p_dbm: f64) -> f64 {
    1e-3 * 10f64.powf(p_dbm / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        ExperimentConfig::default().validate().unwrap();
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"theta": 1}"#).is_err());
        let c: ExperimentConfig = serde_json::from_str(r#"{"channel": {"beta": 0.01}}"#).unwrap();
        assert_eq!(c.channel.beta, 0.01);
        assert_eq!(c.channel.m_l, 3);
    }

    #[test]
    fn grids_validated() {
        let mut c = ExperimentConfig::default();
        c.thresholds_dbm.clear();
        assert!(c.validate().unwrap_err().to_string().contains("thresholds_dbm"));
        let c = ExperimentConfig { lambdas: vec![1e-4, 1e-5], ..Default::default() };
        assert!(c.validate().unwrap_err().to_string().contains("lambdas"));
    }

    #[test]
    fn dbm_round_trip() {
        assert_eq!(dbm_to_w(0.0), 1e-3);
        for p in [-60.0, -31.5, 0.0, 12.0] {
            assert!((10.0 * (dbm_to_w(p) / 1e-3).log10() - p).abs() < 1e-12);
        }
    }
}
