use std::fs;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plasmon-casimir")).args(args).output().unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

#[test]
fn sweep_writes_single_header_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep.csv");
    let o = bin(&["sweep", "--l-min", "0.01", "--l-max", "10", "--points", "5", "--threads", "2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out).unwrap();
    let r = rows(&csv);
    assert_eq!(
        r[0],
        ["L_over_lambdap", "eta", "eta_pl", "eta_pl_plus", "eta_pl_minus", "eta_ph", "err_total", "err_pl", "status"]
    );
    assert_eq!(r.len(), 6);
    assert_eq!(csv.matches("L_over_lambdap").count(), 1);
    for row in &r[1..] {
        assert_eq!(row[8], "ok");
        let eta: f64 = row[1].parse().unwrap();
        let pl: f64 = row[2].parse().unwrap();
        let ph: f64 = row[5].parse().unwrap();
        assert!(eta > 0.0 && eta < 1.0);
        assert!((pl + ph - eta).abs() < 1e-6 * (1.0 + pl.abs()));
        // twelve significant digits in scientific notation
        assert_eq!(row[1].split('e').next().unwrap().trim_start_matches('-').len(), 13);
    }
}

#[test]
fn modes_csv_columns_and_evanescent_blank() {
    let o = bin(&["modes", "--pol", "TM", "--k", "0.5", "--kl-pi-min", "0.5", "--kl-pi-max", "2", "--points", "4", "--m-max", "3"]);
    assert!(o.status.success());
    let r = rows(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(r[0], ["kL_over_pi", "pol", "branch", "m", "omega_over_omegap", "kz_over_kp", "sector"]);
    let plasmons: Vec<_> = r[1..].iter().filter(|row| row[2].starts_with("plasmon")).collect();
    assert_eq!(plasmons.len(), 8);
    for row in &r[1..] {
        assert_eq!(row[5].is_empty(), row[6] == "evanescent");
    }
}

#[test]
fn perfect_reference_modes() {
    let o = bin(&["modes", "--perfect", "--k", "1", "--L", "0.5", "--m-max", "2"]);
    assert!(o.status.success());
    let r = rows(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(r.len(), 3);
    // kL/π = 1 so k_z = mπ/L = m k
    let kz: f64 = r[2][5].parse().unwrap();
    assert!((kz - 2.0).abs() < 1e-10);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "L = 0.05\nsplit-at-light-line = false\n").unwrap();
    let o = bin(&["eta", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = rows(&String::from_utf8(o.stdout).unwrap());
    let x: f64 = r[1][0].parse().unwrap();
    assert!((x - 0.05).abs() < 1e-12);
    let o = bin(&["eta", "--config", cfg.to_str().unwrap(), "--L", "0.1"]);
    let r = rows(&String::from_utf8(o.stdout).unwrap());
    let x: f64 = r[1][0].parse().unwrap();
    assert!((x - 0.1).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["sweep", "--points", "1"]).status.code(), Some(1));
    assert_eq!(bin(&["fit", "--window", "beta=30,30"]).status.code(), Some(1));
    assert_eq!(bin(&["fit", "--points", "2"]).status.code(), Some(1));
    assert_eq!(bin(&["eta", "--L", "-1"]).status.code(), Some(1));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    assert_eq!(bin(&["crossover"]).status.code(), Some(0));
    // unreachable tolerances exhaust the subdivision budget
    assert_eq!(bin(&["eta", "--L", "1", "--rel-tol", "1e-300", "--abs-tol", "1e-300"]).status.code(), Some(2));
}

#[test]
fn strict_fit_reports_pass_lines() {
    let o = bin(&["fit", "--strict"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count(), 3);
    let expected = if text.contains("FAIL") { 3 } else { 0 };
    assert_eq!(o.status.code(), Some(expected));
}
