//! End-to-end runs of the `esqpt` binary.
#![allow(clippy::approx_constant)]

use std::path::Path;
use std::process::{Command, Output};

fn esqpt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_esqpt")).args(args).env_remove("ESQPT_THREADS").output().unwrap()
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    let mut a = args.to_vec();
    a.extend(["--out", dir.to_str().unwrap()]);
    let o = esqpt(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    o
}

/// Data rows of a CSV file, split into fields.
fn rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    (header, lines.map(|l| l.split(',').map(String::from).collect()).collect())
}

fn num(s: &str) -> f64 {
    s.parse().unwrap()
}

#[test]
fn spinodal_reproduces_known_pair() {
    let d = tempfile::tempdir().unwrap();
    run_in(d.path(), &["spinodal", "--beta0p", "1.41421356"]);
    let (h, r) = rows(&d.path().join("spinodal.csv"));
    assert_eq!(h, ["beta0p", "lambda_star", "lambda_star_star"]);
    assert!((num(&r[0][1]) - 0.707).abs() < 0.005);
    assert!((num(&r[0][2]) - 1.333).abs() < 0.005);
    assert!(d.path().join("spinodal.manifest.json").exists());
}

#[test]
fn boundary_range_at_one_lambda() {
    let d = tempfile::tempdir().unwrap();
    run_in(d.path(), &["boundary", "--beta0p", "1.7", "--lambda", "2.0"]);
    let (_, r) = rows(&d.path().join("boundary.csv"));
    assert_eq!(r.len(), 1);
    assert!((num(&r[0][1]) - 1.5).abs() < 1e-6);
    assert!((num(&r[0][2]) - 2.0).abs() < 1e-6);
}

#[test]
fn u5_spectrum_for_three_bosons() {
    let d = tempfile::tempdir().unwrap();
    run_in(d.path(), &["spectrum", "--n", "3", "--lambda", "0", "--beta0p", "1.41421356"]);
    let (_, r) = rows(&d.path().join("spectrum.csv"));
    let e: Vec<f64> = r.iter().map(|row| num(&row[2])).collect();
    // E(n_d) = (2/N) n_d(n_d−1) + (2β₀′²/N)(N−n_d) n_d at n_d = 0, 2, 3
    let b2 = 1.41421356f64.powi(2);
    let want = [0.0, 4.0 / 3.0 + 4.0 * b2 / 3.0, 4.0];
    for (a, b) in e.iter().zip(want) {
        assert!((a - b).abs() < 1e-6, "{e:?}");
    }
}

#[test]
fn manifest_records_inputs_and_seed() {
    let d = tempfile::tempdir().unwrap();
    run_in(d.path(), &["density-cut", "--lambda", "1", "--samples", "20000", "--seed", "5", "--bins", "60"]);
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.path().join("density-cut.manifest.json")).unwrap()).unwrap();
    assert_eq!(m["seed"], 5);
    assert_eq!(m["inputs"]["samples"], 20000);
    assert_eq!(m["inputs"]["bins"], 60);
    assert!(m["wall_time_s"].as_f64().unwrap() >= 0.0);
    assert_eq!(m["files"][0], "density-cut.csv");
    let (h, r) = rows(&d.path().join("density-cut.csv"));
    assert_eq!(h, ["lambda", "e_center", "rho", "drho_dE", "mc_error"]);
    assert_eq!(r.len(), 60);
}

#[test]
fn reruns_are_byte_identical_across_thread_counts() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let job = [
        "phase-diagram", "--beta0p", "1.7", "--lambda-start", "0.5", "--lambda-stop", "0.8",
        "--lambda-step", "0.1", "--samples", "20000", "--bins", "40",
    ];
    let mut one = job.to_vec();
    one.extend(["--threads", "1"]);
    run_in(a.path(), &one);
    run_in(b.path(), &job);
    let read = |d: &Path| std::fs::read(d.join("phase-diagram.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
    let (_, r) = rows(&a.path().join("phase-diagram.csv"));
    assert_eq!(r.len(), 4 * 40);
}

#[test]
fn config_file_with_flag_override() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("job.conf");
    std::fs::write(&cfg, "# boundary job\ncommand = boundary\nbeta0p = 1.7\nlambda-start = 0\nlambda_stop = 1\nlambda_step = 0.5\nformat = json\n").unwrap();
    run_in(d.path(), &["boundary", "--config", cfg.to_str().unwrap(), "--lambda-stop", "2"]);
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.path().join("boundary.json")).unwrap()).unwrap();
    let lams: Vec<f64> = v.as_array().unwrap().iter().map(|r| r["lambda"].as_f64().unwrap()).collect();
    assert_eq!(lams, [0.0, 0.5, 1.0, 1.5, 2.0]);
}

#[test]
fn json_output_matches_csv_values() {
    let d = tempfile::tempdir().unwrap();
    run_in(d.path(), &["flow", "--lambda", "0.5", "--n", "10", "--bins", "20"]);
    run_in(d.path(), &["flow", "--lambda", "0.5", "--n", "10", "--bins", "20", "--format", "json"]);
    let (_, r) = rows(&d.path().join("flow.csv"));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(d.path().join("flow.json")).unwrap()).unwrap();
    for (row, obj) in r.iter().zip(v.as_array().unwrap()) {
        assert_eq!(num(&row[2]), obj["rho"].as_f64().unwrap());
    }
}

#[test]
fn excited_surfaces_write_both_tables() {
    let d = tempfile::tempdir().unwrap();
    run_in(d.path(), &["excited-surfaces", "--lambda", "1", "--n", "50", "--beta-points", "11", "--n-gamma", "0,2"]);
    let (_, s) = rows(&d.path().join("excited-surfaces.csv"));
    assert_eq!(s.len(), 22);
    let (h, _) = rows(&d.path().join("excited-surfaces.stationary.csv"));
    assert_eq!(h, ["lambda", "n_gamma", "beta_star", "e_star", "kind"]);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| esqpt(args).status.code().unwrap();
    assert_eq!(code(&["spinodal", "--no-such-flag"]), 64);
    assert_eq!(code(&["frobnicate"]), 64);
    assert_eq!(code(&["--help"]), 0);
    let d = tempfile::tempdir().unwrap();
    let file = d.path().join("occupied");
    std::fs::write(&file, "").unwrap();
    assert_eq!(code(&["spinodal", "--out", file.join("sub").to_str().unwrap()]), 74);
    let out = d.path().to_str().unwrap();
    assert_eq!(code(&["excited-surfaces", "--lambda", "1", "--n-gamma", "3", "--out", out]), 2);
    assert_eq!(code(&["boundary", "--beta0p", "-1", "--lambda", "1", "--out", out]), 2);
    assert_eq!(code(&["boundary", "--out", out]), 64);
}
