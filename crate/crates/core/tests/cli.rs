use std::path::Path;
use std::process::{Command, Output};

use ria_core::decoder::{scan_rational_multilayer, GammaVerdict};
use ria_core::harness::{read_csv, GammaRow, RunManifest};

fn ria(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ria")).args(args).output().expect("spawn ria")
}

fn write_config(dir: &Path, json: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, json).unwrap();
    path.to_string_lossy().into_owned()
}

fn stderr_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stderr);
    let line = text.lines().last().expect("stderr line");
    serde_json::from_str(line).unwrap_or_else(|e| panic!("not JSON ({e}): {text}"))
}

#[test]
fn missing_noise_variance_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{"version": 1, "scenario": "x-channel", "powers": [1e4, 1e5, 1e6]}"#);
    let out = ria(&["run", "--config", &config]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr_json(&out);
    assert_eq!(err["error"], "config");
    assert_eq!(err["exit_code"], 2);
}

#[test]
fn unknown_fields_and_bad_epsilon_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{"version": 1, "scenario": "gain-scan", "sigma2": 1, "bogus": 3}"#);
    assert_eq!(ria(&["gain-scan", "--config", &config]).status.code(), Some(2));
    let config = write_config(dir.path(), r#"{"version": 1, "scenario": "gain-scan", "sigma2": 1, "epsilon": 0.5}"#);
    assert_eq!(ria(&["gain-scan", "--config", &config]).status.code(), Some(2));
    // Scenario must match the subcommand.
    let config = write_config(dir.path(), r#"{"version": 1, "scenario": "khintchine", "sigma2": 1}"#);
    assert_eq!(ria(&["gamma-check", "--config", &config]).status.code(), Some(2));
}

#[test]
fn gamma_check_writes_all_holds() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("gamma");
    let out = ria(&["gamma-check", "--out", out_dir.to_str().unwrap(), "--workers", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let rows: Vec<GammaRow> = read_csv(std::fs::File::open(out_dir.join("gamma_check.csv")).unwrap()).unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.verdict == "holds"), "{rows:?}");
    let manifest = RunManifest::read(&out_dir).unwrap();
    assert_eq!(manifest.scenario, "gamma-check");
    assert!(manifest.files.iter().any(|f| f.path == "gamma_check.csv"));
}

#[test]
fn equal_digit_bound_and_base_collide() {
    // a = W breaks uniqueness of the base-W expansion.
    let scan = scan_rational_multilayer(2, 3, 6, 6, 2).unwrap();
    let GammaVerdict::Violated { first, second } = scan.verdict else {
        panic!("expected a witness, got {:?}", scan.verdict);
    };
    assert_ne!(first, second);
    assert_eq!(scan.key(first), scan.key(second));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let json = r#"{
        "version": 1, "scenario": "symmetric-rational", "h": "2/3", "epsilon": 0.05,
        "levels": [1, 2, 3], "sigma2": 1, "trials": 4000, "seed": 11
    }"#;
    let config = write_config(dir.path(), json);
    let mut manifests = Vec::new();
    for (run, workers) in [("a", "1"), ("b", "4")] {
        let out_dir = dir.path().join(run);
        let out = ria(&["sweep", "--config", &config, "--out", out_dir.to_str().unwrap(), "--workers", workers]);
        // Low power may leave too few usable points for a slope; files are written either way.
        assert!(matches!(out.status.code(), Some(0 | 1)), "{}", String::from_utf8_lossy(&out.stderr));
        manifests.push(RunManifest::read(&out_dir).unwrap());
        assert_eq!(
            std::fs::read(out_dir.join("sweep.csv")).unwrap(),
            std::fs::read(dir.path().join("a").join("sweep.csv")).unwrap()
        );
    }
    assert_eq!(manifests[0].config_digest, manifests[1].config_digest);
    assert_eq!(manifests[0].files, manifests[1].files);
}

#[test]
fn khintchine_defaults_run() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("k");
    let out = ria(&["khintchine", "--out", out_dir.to_str().unwrap(), "--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(summary["out"].is_string());
    assert!(out_dir.join("khintchine.csv").exists());
}
