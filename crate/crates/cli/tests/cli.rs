use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use spinj_chsh_cli::run_args;
use tempfile::TempDir;

const REFERENCE_J1: &str = r#"{"twice_j": 2, "alpha1": {"2": -0.7853981633974483}, "alpha2": {"2": 0.7853981633974483}, "beta1": {"2": 0.0}, "beta2": {"2": 1.5707963267948966}}"#;
const REFERENCE_HALF: &str = r#"{"twice_j": 1, "alpha1": {"1": -0.7853981633974483}, "alpha2": {"1": 0.7853981633974483}, "beta1": {"1": 0.0}, "beta2": {"1": 1.5707963267948966}}"#;
const ZERO_J1: &str = r#"{"twice_j": 2, "alpha1": {"2": 0}, "alpha2": {"2": 0}, "beta1": {"2": 0}, "beta2": {"2": 0}}"#;

fn run(args: &[&str]) -> (i32, String, String) {
    run_args(std::iter::once("spinj-chsh").chain(args.iter().copied()))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn scan_csv() {
    let (code, out, _) = run(&["scan", "--twice-j-max", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "twice_j,j_display,max_violation,violates_classical,saturates_tsirelson"
    );
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "1,1/2,2.8284271247461903,true,true");
    assert!(lines[2].starts_with("2,1,2.5522847498"));
    assert!(lines[2].ends_with(",true,false"));
}

#[test]
fn scan_json_is_one_document() {
    let (code, out, _) = run(&["scan", "--twice-j-max", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["j_display"], "3/2");
    assert_eq!(
        rows[0]["max_violation"].as_f64().unwrap(),
        2.8284271247461903
    );
}

#[test]
fn scan_defaults_to_csv() {
    let (_, out, _) = run(&["scan", "--twice-j-max", "1"]);
    assert!(out.starts_with("twice_j,"));
}

#[test]
fn scan_rejects_zero() {
    let (code, out, err) = run(&["scan", "--twice-j-max", "0"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(!err.is_empty());
}

#[test]
fn expectation_reference_half_integer() {
    let dir = TempDir::new().unwrap();
    let setting = write(&dir, "s.json", REFERENCE_HALF);
    let (code, out, _) = run(&[
        "expectation",
        "--setting",
        setting.to_str().unwrap(),
        "--method",
        "both",
    ]);
    assert_eq!(code, 0);
    let doc = json(&out);
    let closed = doc["closed"]["chsh_value"].as_f64().unwrap();
    let matrix = doc["matrix"]["chsh_value"].as_f64().unwrap();
    assert!((closed.abs() - 2.8284271247).abs() < 1e-10);
    assert!((matrix.abs() - 2.8284271247).abs() < 1e-10);
    assert!(doc["max_abs_difference"].as_f64().unwrap() <= 1e-10);
}

#[test]
fn expectation_zero_setting_spin_one() {
    let dir = TempDir::new().unwrap();
    let setting = write(&dir, "s.json", ZERO_J1);
    let (code, out, _) = run(&[
        "expectation",
        "--setting",
        setting.to_str().unwrap(),
        "--state",
        "singlet",
        "--method",
        "closed",
    ]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["closed"]["chsh_value"].as_f64().unwrap(), 2.0);
    assert!(doc.get("matrix").is_none());
}

#[test]
fn expectation_parse_errors() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\"twice_j\": 2,");
    assert_eq!(
        run(&["expectation", "--setting", bad.to_str().unwrap()]).0,
        2
    );
    let missing = write(
        &dir,
        "missing.json",
        r#"{"twice_j": 2, "alpha1": {}, "alpha2": {"2": 0}, "beta1": {"2": 0}, "beta2": {"2": 0}}"#,
    );
    assert_eq!(
        run(&["expectation", "--setting", missing.to_str().unwrap()]).0,
        2
    );
    assert_eq!(
        run(&["expectation", "--setting", "/nonexistent/setting.json"]).0,
        2
    );
}

#[test]
fn expectation_with_amplitudes() {
    let dir = TempDir::new().unwrap();
    let setting = write(&dir, "s.json", REFERENCE_J1);
    // |1⟩⊗|1⟩ is the last basis ket of the 9-dimensional product space.
    let mut pairs = ["[0,0]"; 9];
    pairs[8] = "[1,0]";
    let product = write(&dir, "amp.json", &format!("[{}]", pairs.join(",")));
    let s = setting.to_str().unwrap();
    let a = product.to_str().unwrap();

    let (code, out, _) = run(&[
        "expectation",
        "--setting",
        s,
        "--amplitudes",
        a,
        "--method",
        "matrix",
    ]);
    assert_eq!(code, 0);
    let v = json(&out)["matrix"]["chsh_value"].as_f64().unwrap();
    assert!(v.abs() <= 2.0 + 1e-10);

    // Closed form is singlet-only.
    assert_eq!(
        run(&["expectation", "--setting", s, "--amplitudes", a]).0,
        2
    );

    let short = write(&dir, "short.json", "[[1,0],[0,0],[0,0],[0,0]]");
    let (code, _, err) = run(&[
        "expectation",
        "--setting",
        s,
        "--amplitudes",
        short.to_str().unwrap(),
        "--method",
        "matrix",
    ]);
    assert_eq!(code, 3);
    assert!(err.contains("length"));
}

#[test]
fn optimize_analytic_emits_reference_phases() {
    let (code, out, _) = run(&["optimize", "--twice-j", "1", "--method", "analytic"]);
    assert_eq!(code, 0);
    let doc = json(&out);
    assert_eq!(doc["best_value"].as_f64().unwrap(), 2.8284271247461903);
    let setting = &doc["setting"];
    assert_eq!(
        setting["alpha1"]["1"].as_f64().unwrap(),
        -std::f64::consts::FRAC_PI_4
    );
    assert_eq!(
        setting["alpha2"]["1"].as_f64().unwrap(),
        std::f64::consts::FRAC_PI_4
    );
    assert_eq!(setting["beta1"]["1"].as_f64().unwrap(), 0.0);
    assert_eq!(
        setting["beta2"]["1"].as_f64().unwrap(),
        std::f64::consts::FRAC_PI_2
    );
}

#[test]
fn optimize_output_setting_feeds_expectation() {
    let (_, out, _) = run(&["optimize", "--twice-j", "5", "--method", "analytic"]);
    let dir = TempDir::new().unwrap();
    let setting = write(&dir, "opt.json", &json(&out)["setting"].to_string());
    let (code, out, _) = run(&["expectation", "--setting", setting.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(
        (json(&out)["matrix"]["chsh_value"].as_f64().unwrap().abs() - 2.8284271247461903).abs()
            < 1e-10
    );
}

#[test]
fn optimize_gradient_and_grid() {
    let args = [
        "optimize",
        "--twice-j",
        "2",
        "--method",
        "gradient",
        "--seed",
        "7",
        "--starts",
        "16",
    ];
    let (code, out, _) = run(&args);
    assert_eq!(code, 0);
    let best = json(&out)["best_value"].as_f64().unwrap();
    assert!((best - 2.5522847498).abs() < 1e-6);
    assert_eq!(run(&args).1, out);

    let (code, out, _) = run(&["optimize", "--twice-j", "3", "--method", "grid"]);
    assert_eq!(code, 0);
    assert!((json(&out)["best_value"].as_f64().unwrap() - 2.8284271247).abs() < 1e-10);
}

#[test]
fn optimize_gradient_requires_seed() {
    assert_eq!(
        run(&["optimize", "--twice-j", "2", "--method", "gradient"]).0,
        2
    );
}

#[test]
fn optimize_non_convergence_still_prints() {
    let (code, out, err) = run(&[
        "optimize",
        "--twice-j",
        "4",
        "--method",
        "gradient",
        "--seed",
        "1",
        "--starts",
        "1",
        "--max-iters",
        "1",
        "--tol",
        "1e-14",
    ]);
    assert_eq!(code, 5);
    assert_eq!(json(&out)["converged"], false);
    assert!(err.contains("converge"));
}

#[test]
fn verify_passes() {
    let (code, out, _) = run(&["verify", "--twice-j", "1", "--trials", "100", "--seed", "1"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 9);
}

#[test]
fn verify_reports_discrepancy() {
    let (code, out, _) = run(&["verify", "--twice-j", "4", "--trials", "200", "--seed", "2"]);
    assert_eq!(code, 0);
    let line = out
        .lines()
        .find(|l| l.contains("closed_vs_matrix"))
        .unwrap();
    let value: f64 = line
        .split("max discrepancy = ")
        .nth(1)
        .unwrap()
        .split(',')
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(value <= 1e-10);
}

#[test]
fn verify_guard_and_seed() {
    assert_eq!(run(&["verify", "--twice-j", "60", "--seed", "1"]).0, 2);
    assert_eq!(run(&["verify", "--twice-j", "2"]).0, 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_spinj-chsh");
    let status = Command::new(bin)
        .args(["scan", "--twice-j-max", "0"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
    let out = Command::new(bin)
        .args(["scan", "--twice-j-max", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}
