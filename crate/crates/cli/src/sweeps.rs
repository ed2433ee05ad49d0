use anyhow::Result;
use mmwpt::analysis::{self, CoverageModel};
use mmwpt::bae::BaeModel;
use mmwpt::gain_stats::{self, GainDistribution};
use mmwpt::montecarlo::{self, EnergyMetric, McConfig};
use mmwpt::patterns::gaussian_from_beamwidth;
use rayon::prelude::*;

use crate::config::{dbm_to_w, AntennaKind, EhKind, EnergyAxis, ExperimentConfig};
use crate::table::{num, Table};

fn mc_config(cfg: &ExperimentConfig, kind: AntennaKind, sigma: f64, lambda: f64, eh: EhKind, table: &mut Table) -> Result<McConfig> {
    let mut net = cfg.net();
    net.lambda_t = lambda;
    let mut mc = McConfig::new(cfg.pattern(kind)?, BaeModel::gaussian(sigma)?, net, cfg.chan(), cfg.eh_model(eh))?;
    mc.trials = cfg.montecarlo.trials;
    mc.seed = cfg.montecarlo.seed;
    if let Some(r) = cfg.montecarlo.r_max {
        mc.r_max = r;
    }
    table.meta("mc_run", format!("antenna={} sigma={} lambda_t={} r_min_field_m={} r_max_m={}", kind.name(), num(sigma), num(lambda), num(mc.r_min_field), num(mc.r_max)));
    Ok(mc)
}

pub fn coverage_sweep(cfg: &ExperimentConfig) -> Result<Table> {
    let mut t = Table::new(&["threshold_dbm", "engine", "antenna", "sigma", "p_ec", "ci"]);
    let sigmas = cfg.sigmas();
    let eps: Vec<f64> = cfg.thresholds_dbm.iter().map(|&d| dbm_to_w(d)).collect();
    let mut analytic: Vec<Vec<f64>> = Vec::new();
    if cfg.engine.analytic() {
        let model = CoverageModel::new(cfg.coverage_spec(), cfg.net(), cfg.chan(), cfg.gaussian()?, cfg.eh_model(EhKind::Nonlinear))?;
        for &s in &sigmas {
            let vals: Vec<mmwpt::Result<analysis::CoverageValue<f64>>> = eps.par_iter().map(|&e| model.coverage(e, s)).collect();
            let mut row = Vec::with_capacity(vals.len());
            for (v, &d) in vals.into_iter().zip(&cfg.thresholds_dbm) {
                let v = v?;
                if v.clamped {
                    eprintln!("warning: coverage at {d} dBm, sigma {s} clamped from {}", v.raw);
                }
                row.push(v.p_ec);
            }
            analytic.push(row);
        }
    }
    let mut mc: Vec<Vec<montecarlo::McEstimate>> = Vec::new();
    if cfg.engine.mc() {
        for &s in &sigmas {
            let c = mc_config(cfg, cfg.antenna, s, cfg.network.lambda_t, EhKind::Nonlinear, &mut t)?;
            let samples = montecarlo::sample_rf(&c)?;
            let mut row = Vec::with_capacity(eps.len());
            for &e in &eps {
                row.push(montecarlo::coverage_from_samples(&samples, &c.eh, e)?);
            }
            mc.push(row);
        }
    }
    for (i, &d) in cfg.thresholds_dbm.iter().enumerate() {
        for (j, &s) in sigmas.iter().enumerate() {
            if let Some(row) = analytic.get(j) {
                t.push(vec![num(d), "analytic".into(), "gaussian".into(), num(s), num(row[i]), String::new()]);
            }
            if let Some(row) = mc.get(j) {
                t.push(vec![num(d), "mc".into(), cfg.antenna.name().into(), num(s), num(row[i].mean), num(row[i].ci_halfwidth)]);
            }
        }
    }
    Ok(t)
}

pub fn energy_sweep(cfg: &ExperimentConfig) -> Result<Table> {
    let mut t = Table::new(&["axis", "axis_value", "engine", "antenna", "eh_variant", "mean_energy_w", "ci", "rel"]);
    let pattern = cfg.gaussian()?;
    let base_sigma = cfg.sigmas()[0];
    let points: Vec<(f64, f64, f64)> = match cfg.energy_axis {
        EnergyAxis::Sigma => cfg.sigmas().into_iter().map(|s| (s, s, cfg.network.lambda_t)).collect(),
        EnergyAxis::Lambda => cfg.lambdas.iter().map(|&l| (l, base_sigma, l)).collect(),
    };
    let axis = match cfg.energy_axis {
        EnergyAxis::Sigma => "sigma",
        EnergyAxis::Lambda => "lambda_t",
    };
    for &(x, sigma, lambda) in &points {
        let rel = analysis::rel(&pattern, sigma);
        let mut net = cfg.net();
        net.lambda_t = lambda;
        for &ant in &cfg.antennas {
            for &ek in &cfg.eh_variants {
                let eh = cfg.eh_model(ek);
                let variant = match ek {
                    EhKind::Linear => "linear",
                    EhKind::Nonlinear => "nonlinear",
                };
                if cfg.engine.analytic() && ant == AntennaKind::Gaussian {
                    let v = match ek {
                        EhKind::Linear => cfg.eh.zeta * analysis::avg_rf_energy(&net, &cfg.chan(), &pattern, sigma)?.total(),
                        EhKind::Nonlinear => CoverageModel::new(cfg.coverage_spec(), net, cfg.chan(), pattern, eh)?.avg_dc_energy(cfg.eps_min_w, sigma)?,
                    };
                    t.push(vec![axis.into(), num(x), "analytic".into(), ant.name().into(), variant.into(), num(v), String::new(), num(rel)]);
                }
                if cfg.engine.mc() {
                    let c = mc_config(cfg, ant, sigma, lambda, ek, &mut t)?.energy_convention();
                    let metric = match ek {
                        EhKind::Linear => EnergyMetric::Dc,
                        EhKind::Nonlinear => EnergyMetric::DcAbove(cfg.eps_min_w),
                    };
                    let e = montecarlo::estimate_mean_energy(&c, metric)?;
                    t.push(vec![axis.into(), num(x), "mc".into(), ant.name().into(), variant.into(), num(e.mean), num(e.ci_halfwidth), num(rel)]);
                }
            }
        }
    }
    Ok(t)
}

pub fn rel_sweep(cfg: &ExperimentConfig) -> Result<Table> {
    let mut t = Table::new(&["theta0", "sigma", "sigma_over_theta0", "rel"]);
    for &t0 in &cfg.rel_theta0 {
        let p = gaussian_from_beamwidth(t0)?;
        for &s in &cfg.rel_sigmas {
            t.push(vec![num(t0), num(s), num(s / t0), num(analysis::rel(&p, s))]);
        }
    }
    Ok(t)
}

fn dump_law(t: &mut Table, law: &str, model: &str, d: &GainDistribution<f64>, grid: &[f64]) -> Result<()> {
    for &om in grid {
        t.push(vec![law.into(), model.into(), "density".into(), num(om), num(d.density(om))]);
    }
    for a in &d.atoms {
        t.push(vec![law.into(), model.into(), "atom".into(), num(a.at), num(a.mass)]);
    }
    t.meta("total_mass", format!("{law} {model} {}", num(d.total_mass()?)));
    Ok(())
}

pub fn pdf_check(cfg: &ExperimentConfig) -> Result<Table> {
    let mut t = Table::new(&["law", "model", "kind", "omega", "value"]);
    let p = cfg.gaussian()?;
    let n = cfg.pdf_points.max(2);
    let lo = (p.g * p.g).ln();
    // open grid: both ends carry integrable singularities
    let grid: Vec<f64> = (0..n).map(|i| (lo * (1.0 - (i as f64 + 0.5) / n as f64)).exp()).collect();
    let mut models = vec![("uniform".to_string(), BaeModel::Uniform)];
    for (&r, s) in cfg.sigma_over_theta0.iter().zip(cfg.sigmas()) {
        if s > 0.0 {
            models.push((format!("gaussian_sigma_over_theta0={}", num(r)), BaeModel::gaussian(s)?));
        }
    }
    for (name, m) in &models {
        dump_law(&mut t, "single", name, &gain_stats::single_gain_pdf(&p, m), &grid)?;
        dump_law(&mut t, "cascaded_exact", name, &gain_stats::cascaded_pdf_exact(&p, m), &grid)?;
        dump_law(&mut t, "cascaded_approx", name, &gain_stats::cascaded_pdf_approx(&p, m), &grid)?;
    }
    Ok(t)
}
