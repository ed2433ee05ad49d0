mod config;
mod fault;
mod selftest;
mod sweeps;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use config::{AntennaKind, Engine, ExperimentConfig};
use table::Table;

#[derive(Parser)]
#[command(name = "mmwpt", version, about = "Coverage and harvested-energy sweeps for mmWave power transfer")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// JSON experiment file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// CSV destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    engine: Option<Engine>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, value_enum)]
    antenna: Option<AntennaKind>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Coverage probability against the DC threshold, one curve per BAE level.
    CoverageSweep(Common),
    /// Average harvested energy against BAE level or transmitter density.
    EnergySweep(Common),
    /// Relative energy loss against BAE level.
    RelSweep(Common),
    /// Gain densities and atoms on a grid.
    PdfCheck(Common),
    /// Runs the oracle suite.
    Selftest {
        /// Shift erf by 1e-3 to confirm the suite catches it.
        #[arg(long)]
        inject_erf_fault: bool,
    },
}

fn load(c: &Common) -> Result<ExperimentConfig> {
    let mut cfg = match &c.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    if let Some(e) = c.engine {
        cfg.engine = e;
    }
    if let Some(s) = c.seed {
        cfg.montecarlo.seed = s;
    }
    if let Some(t) = c.trials {
        cfg.montecarlo.trials = t;
    }
    if let Some(a) = c.antenna {
        cfg.antenna = a;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cmd: &str, c: &Common, cfg: &ExperimentConfig, mut t: Table) -> Result<()> {
    let mut head = Table::new(&[]);
    head.meta("command", format!("mmwpt {cmd}"));
    head.meta("version", format!("{} ({})", env!("CARGO_PKG_VERSION"), env!("MMWPT_GIT_DESCRIBE")));
    head.meta("seed", cfg.montecarlo.seed.to_string());
    head.meta("trials", cfg.montecarlo.trials.to_string());
    let cv = &cfg.coverage;
    head.meta(
        "tolerances",
        format!("series_tol={} series_window={} t_max={} quad_abs={} quad_rel={} k_order={}", cv.series_tol, cv.series_window, cv.t_max, cv.quad_abs, cv.quad_rel, cv.k_order),
    );
    head.meta("config", serde_json::to_string(cfg)?);
    head.meta.append(&mut t.meta);
    t.meta = head.meta;
    match &c.out {
        Some(p) => {
            let mut f = std::io::BufWriter::new(std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?);
            t.write(&mut f)?;
            f.flush()?;
        }
        None => t.write(&mut std::io::stdout().lock())?,
    }
    Ok(())
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    let (name, common, f): (&str, &Common, fn(&ExperimentConfig) -> Result<Table>) = match &cli.cmd {
        Cmd::CoverageSweep(c) => ("coverage-sweep", c, sweeps::coverage_sweep),
        Cmd::EnergySweep(c) => ("energy-sweep", c, sweeps::energy_sweep),
        Cmd::RelSweep(c) => ("rel-sweep", c, sweeps::rel_sweep),
        Cmd::PdfCheck(c) => ("pdf-check", c, sweeps::pdf_check),
        Cmd::Selftest { inject_erf_fault } => {
            return Ok(if *inject_erf_fault {
                selftest::report("f64, erf shifted by 1e-3", &selftest::run::<fault::ErfFault>())
            } else {
                selftest::report("f64", &selftest::run::<f64>())
            });
        }
    };
    let cfg = load(common)?;
    let table = f(&cfg)?;
    emit(name, common, &cfg, table)?;
    Ok(true)
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
