use std::path::Path;
use std::process::{Command, Output};

fn mmwpt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mmwpt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &Path, json: &str) -> String {
    let p = dir.join("cfg.json");
    std::fs::write(&p, json).unwrap();
    p.to_str().unwrap().to_string()
}

/// Header block and CSV rows of a table.
fn split(text: &str) -> (Vec<&str>, Vec<Vec<&str>>) {
    let meta: Vec<&str> = text.lines().filter(|l| l.starts_with("# ")).collect();
    let rows = text.lines().filter(|l| !l.starts_with('#') && !l.is_empty()).map(|l| l.split(',').collect()).collect();
    (meta, rows)
}

#[test]
fn selftest_passes() {
    let o = mmwpt(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn selftest_catches_erf_fault() {
    let o = mmwpt(&["selftest", "--inject-erf-fault"]);
    assert!(!o.status.success());
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn empty_grid_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"thresholds_dbm": []}"#);
    let o = mmwpt(&["coverage-sweep", "--config", &cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("thresholds_dbm"));
}

#[test]
fn unknown_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"sigma": [0.1]}"#);
    assert_eq!(mmwpt(&["rel-sweep", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn rel_sweep_starts_at_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rel.csv");
    let o = mmwpt(&["rel-sweep", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let (meta, rows) = split(&text);
    assert!(meta.iter().any(|l| l.starts_with("# command: mmwpt rel-sweep")));
    for key in ["version", "seed", "trials", "tolerances", "config"] {
        assert!(meta.iter().any(|l| l.starts_with(&format!("# {key}: "))), "missing {key}");
    }
    assert_eq!(rows[0], ["theta0", "sigma", "sigma_over_theta0", "rel"]);
    assert_eq!(rows[1][1].parse::<f64>().unwrap(), 0.0);
    assert_eq!(rows[1][3].parse::<f64>().unwrap(), 0.0);
    // REL grows with the error within each beamwidth block
    for w in rows[1..].windows(2) {
        let (a, b): (f64, f64) = (w[0][3].parse().unwrap(), w[1][3].parse().unwrap());
        assert!(b < 1.0);
        if w[0][0] == w[1][0] {
            assert!(b >= a);
        } else {
            assert_eq!(b, 0.0);
        }
    }
}

#[test]
fn coverage_sweep_small() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"sigma_over_theta0": [0.0, 0.5], "thresholds_dbm": [-50.0, -30.0]}"#);
    let o = mmwpt(&["coverage-sweep", "--config", &cfg, "--trials", "2000", "--seed", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let (meta, rows) = split(&text);
    assert!(meta.contains(&"# seed: 7"));
    assert!(meta.contains(&"# trials: 2000"));
    assert_eq!(rows[0], ["threshold_dbm", "engine", "antenna", "sigma", "p_ec", "ci"]);
    assert_eq!(rows.len(), 1 + 2 * 2 * 2);
    for r in &rows[1..] {
        let p: f64 = r[4].parse().unwrap();
        assert!((0.0..=1.0).contains(&p));
        assert_eq!(r[5].is_empty(), r[1] == "analytic");
    }
    // same seed, same table
    let again = mmwpt(&["coverage-sweep", "--config", &cfg, "--trials", "2000", "--seed", "7"]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn energy_sweep_small() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"energy_axis": "lambda", "lambdas": [0.0001, 0.0005], "antennas": ["gaussian", "ula"], "eh_variants": ["linear"]}"#,
    );
    let o = mmwpt(&["energy-sweep", "--config", &cfg, "--trials", "2000"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let (_, rows) = split(&text);
    assert_eq!(rows[0][..3], ["axis", "axis_value", "engine"]);
    // analytic rows only for the Gaussian pattern
    assert_eq!(rows.len(), 1 + 2 * 3);
    let energy = |engine: &str, lambda: f64| -> f64 {
        rows[1..]
            .iter()
            .find(|r| r[1].parse::<f64>().unwrap() == lambda && r[2] == engine && r[3] == "gaussian")
            .map(|r| r[5].parse().unwrap())
            .unwrap()
    };
    assert!(energy("analytic", 5e-4) > energy("analytic", 1e-4));
}

#[test]
fn pdf_check_reports_masses() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"sigma_over_theta0": [0.25], "pdf_points": 20}"#);
    let o = mmwpt(&["pdf-check", "--config", &cfg, "--engine", "analytic"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let (meta, rows) = split(&text);
    let masses: Vec<f64> = meta.iter().filter(|l| l.starts_with("# total_mass: cascaded_exact")).map(|l| l.rsplit(' ').next().unwrap().parse().unwrap()).collect();
    assert_eq!(masses.len(), 2);
    assert!(masses.iter().all(|m| (m - 1.0).abs() < 1e-6));
    assert!(rows[1..].iter().all(|r| r[4].parse::<f64>().unwrap() >= 0.0));
}
