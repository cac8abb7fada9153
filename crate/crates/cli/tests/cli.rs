// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end tests of the binary: exit codes, error wording, output
//! determinism, and override handling.

use std::process::{Command, Output};

use tempfile::TempDir;

fn cntring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cntring"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stderr(output: &Output) -> String {
    String::from_utf8_lossy(&output.stderr).to_string()
}

#[test]
fn spectrum_succeeds_and_writes_outputs() {
    let dir = TempDir::new().unwrap();
    let out = cntring(&["spectrum", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(dir.path().join("spectrum.csv").exists());
    assert!(dir.path().join("spectrum.manifest.json").exists());
}

#[test]
fn invalid_luttinger_parameter_exits_1_naming_key() {
    let dir = TempDir::new().unwrap();
    let out = cntring(&[
        "spectrum",
        "--set",
        "ring.k_c=1.5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("ring.k_c"), "{}", stderr(&out));
}

#[test]
fn empty_config_reports_missing_ring() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("empty.toml");
    std::fs::write(&cfg, "").unwrap();
    let out = cntring(&[
        "spectrum",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(
        stderr(&out).contains("missing section: ring"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn unknown_key_exits_1_with_path() {
    let dir = TempDir::new().unwrap();
    let out = cntring(&[
        "spectrum",
        "--set",
        "ring.bogus=1.0",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(msg.contains("ring") && msg.contains("bogus"), "{msg}");
}

#[test]
fn single_point_scan_rejected() {
    let dir = TempDir::new().unwrap();
    let out = cntring(&[
        "scan",
        "--set",
        "scan.count=1",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("scan.count"), "{}", stderr(&out));
}

#[test]
fn failing_scan_point_aborts_with_parameters() {
    let dir = TempDir::new().unwrap();
    let out = cntring(&[
        "scan",
        "--set",
        "scan.target=coupling-g",
        "--set",
        "scan.parameter=coupling.x_nm",
        "--set",
        "scan.grid=linear",
        "--set",
        "scan.min=-5",
        "--set",
        "scan.max=5",
        "--set",
        "scan.count=3",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    assert!(
        msg.contains("coupling.x_nm") && msg.contains("-5"),
        "abort message missing point parameters: {msg}"
    );
    // nothing half-written
    assert!(!dir.path().join("scan.csv").exists());
}

#[test]
fn unknown_figure_lists_available_ids() {
    let dir = TempDir::new().unwrap();
    let out = cntring(&[
        "reproduce",
        "fig-nope",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let msg = stderr(&out);
    for id in ["fig3-a", "fig3-b", "fig-couple-a", "spectrum-flux"] {
        assert!(msg.contains(id), "missing {id} in: {msg}");
    }
}

#[test]
fn impossible_tolerance_exits_2() {
    let dir = TempDir::new().unwrap();
    let out = cntring(&[
        "dynamics",
        "--tol-abs",
        "1e-300",
        "--tol-rel",
        "1e-300",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("step size underflow"), "{}", stderr(&out));
}

#[test]
fn sloppy_tolerance_exits_3_but_writes_outputs() {
    let dir = TempDir::new().unwrap();
    let out = cntring(&[
        "dynamics",
        "--tol-abs",
        "1e-4",
        "--tol-rel",
        "1e-3",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    // outputs and manifest still land, with within_bounds = false recorded
    let manifest = std::fs::read_to_string(dir.path().join("dynamics.manifest.json")).unwrap();
    assert!(manifest.contains("\"within_bounds\": false"));
}

fn strip_timestamp(manifest: &str) -> String {
    manifest
        .lines()
        .filter(|l| !l.contains("generated_at"))
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir_a = TempDir::new().unwrap();
    let dir_b = TempDir::new().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = cntring(&[
            "reproduce",
            "fig-couple-a",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let csv_a = std::fs::read(dir_a.path().join("fig-couple-a.csv")).unwrap();
    let csv_b = std::fs::read(dir_b.path().join("fig-couple-a.csv")).unwrap();
    assert_eq!(csv_a, csv_b, "CSV output not deterministic");

    let man_a =
        std::fs::read_to_string(dir_a.path().join("fig-couple-a.manifest.json")).unwrap();
    let man_b =
        std::fs::read_to_string(dir_b.path().join("fig-couple-a.manifest.json")).unwrap();
    assert_eq!(strip_timestamp(&man_a), strip_timestamp(&man_b));
}

#[test]
fn scan_runs_in_parallel_with_jobs_flag() {
    let dir_seq = TempDir::new().unwrap();
    let dir_par = TempDir::new().unwrap();
    let out = cntring(&[
        "scan",
        "--jobs",
        "1",
        "--out",
        dir_seq.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = cntring(&[
        "scan",
        "--jobs",
        "4",
        "--out",
        dir_par.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    // ordering and values independent of the worker count
    let a = std::fs::read(dir_seq.path().join("scan.csv")).unwrap();
    let b = std::fs::read(dir_par.path().join("scan.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn set_override_changes_output() {
    let dir = TempDir::new().unwrap();
    let base = cntring(&["coupling", "--out", dir.path().to_str().unwrap()]);
    assert!(base.status.success());
    let base_csv = std::fs::read_to_string(dir.path().join("coupling.csv")).unwrap();

    let moved = cntring(&[
        "coupling",
        "--set",
        "coupling.x_nm=0.0",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(moved.status.success());
    let moved_csv = std::fs::read_to_string(dir.path().join("coupling.csv")).unwrap();
    assert_ne!(base_csv, moved_csv);
    // contact coupling is e² times the 10 nm value (x/L_d = 2)
    let g = |csv: &str| -> f64 {
        csv.lines().nth(1).unwrap().split(',').nth(1).unwrap().parse().unwrap()
    };
    let ratio = g(&moved_csv) / g(&base_csv);
    assert!((ratio - std::f64::consts::E.powi(2)).abs() < 1e-9);
}

#[test]
fn config_file_round_trip() {
    // the shipped default written to disk loads identically
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("config.toml");
    std::fs::write(&cfg, cntring_cli::config::DEFAULT_CONFIG).unwrap();
    let out = cntring(&[
        "spectrum",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let from_file = std::fs::read(dir.path().join("spectrum.csv")).unwrap();

    let dir2 = TempDir::new().unwrap();
    let out = cntring(&["spectrum", "--out", dir2.path().to_str().unwrap()]);
    assert!(out.status.success());
    let builtin = std::fs::read(dir2.path().join("spectrum.csv")).unwrap();
    assert_eq!(from_file, builtin);
}

#[test]
fn every_figure_id_produces_csv_and_manifest() {
    let dir = TempDir::new().unwrap();
    for id in cntring_cli::reproduce::FIGURE_IDS {
        let out = cntring(&["reproduce", id, "--out", dir.path().to_str().unwrap()]);
        assert!(out.status.success(), "{id}: {}", stderr(&out));
        assert!(dir.path().join(format!("{id}.csv")).exists(), "{id} csv");
        assert!(
            dir.path().join(format!("{id}.manifest.json")).exists(),
            "{id} manifest"
        );
    }
}

#[test]
fn manifest_records_paths_that_exist() {
    let dir = TempDir::new().unwrap();
    let out = cntring(&["fidelity", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let manifest: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("fidelity.manifest.json")).unwrap(),
    )
    .unwrap();
    for output in manifest["outputs"].as_array().unwrap() {
        // recorded relative to the manifest's directory
        assert!(dir.path().join(output.as_str().unwrap()).exists());
    }
    assert_eq!(manifest["checks"]["within_bounds"], serde_json::json!(true));
}
