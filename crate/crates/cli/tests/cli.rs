use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bspec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = bspec(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.schema.json"));
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(name: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&schema(name)).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{name}: {errors:#?}");
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const DEC: [&str; 10] = ["--a", "1", "--c", "1", "--d", "0.5", "--e", "0.5", "--n", "12"];

#[test]
fn spectrum_json_matches_schema_for_every_kind() {
    for kind in ["full", "reduced", "laplacian"] {
        let mut args = vec!["spectrum", "--kind", kind];
        args.extend(DEC);
        assert_valid("spectrum", &ok_json(&args));
    }
    let v = ok_json(&["spectrum", "--a", "1", "--c", "1", "--d", "2.95", "--e", "-2.25", "--n", "30"]);
    assert_valid("spectrum", &v);
}

#[test]
fn spectrum_csv_has_one_row_per_eigenvalue() {
    let out = bspec(&["spectrum", "--a", "1", "--c", "1", "--d", "0", "--e", "1", "--n", "100", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("re,im,label"));
    assert_eq!(lines.count(), 101);
}

#[test]
fn classify_reports_complex_pair_case() {
    let v = ok_json(&["classify", "--a", "1", "--c", "1", "--d", "2.95", "--e", "-2.25"]);
    assert_valid("classify", &v);
    assert_eq!(v["regime"], "reversed");
    assert_eq!(v["case"], "2b");
}

#[test]
fn stability_json_matches_schema_for_both_orders() {
    let mut first = vec!["stability"];
    first.extend(DEC);
    let v = ok_json(&first);
    assert_valid("stability", &v);
    assert_eq!(v["order"], "first");

    let mut second = first.clone();
    second.extend(["--alpha", "1", "--beta", "1"]);
    let v = ok_json(&second);
    assert_valid("stability", &v);
    assert_eq!(v["order"], "second");

    let mut negative = first.clone();
    negative.extend(["--alpha", "-1", "--beta", "1"]);
    let v = ok_json(&negative);
    assert_valid("stability", &v);
    assert_eq!(v["stable"], "unstable");
}

#[test]
fn simulate_json_matches_schema_for_both_orders() {
    let mut first = vec!["simulate", "--t-end", "2", "--save-every", "10"];
    first.extend(DEC);
    assert_valid("simulate", &ok_json(&first));

    let mut second = first.clone();
    second.extend(["--alpha", "1", "--beta", "1"]);
    let v = ok_json(&second);
    assert_valid("simulate", &v);
    assert!(v["velocities"].is_array());
}

#[test]
fn convergence_verify_monotonicity_match_schemas() {
    let v = ok_json(&["convergence", "--a", "1", "--c", "1", "--d", "2", "--e", "1"]);
    assert_valid("convergence", &v);
    assert_eq!(v["entries"].as_array().unwrap().len(), 4);

    let v = ok_json(&["verify", "--a", "1", "--c", "1", "--d", "2.95", "--e", "-2.25", "--n", "100"]);
    assert_valid("verify", &v);
    assert!(v["max_pairing_error"].as_f64().unwrap() < 1e-8);

    let v = ok_json(&["monotonicity", "--a", "1", "--c", "1", "--d", "0", "--e", "0.5", "--n", "10", "--samples", "50"]);
    assert_valid("monotonicity", &v);
    assert_eq!(v["total_violations"], 0);
}

#[test]
fn domain_error_exits_one_with_json_report() {
    let out = bspec(&["stability", "--a", "1", "--c", "1", "--d", "2", "--e", "1", "--n", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert_valid("error", &report);
    assert_eq!(report["error"], "NotDecentralized");

    let mut args = vec!["simulate", "--t-end", "1", "--dt", "10"];
    args.extend(DEC);
    let out = bspec(&args);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_valid("error", &report);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(bspec(&["spectrum", "--a", "1", "--c", "1", "--d", "0", "--n", "5"]).status.code(), Some(2));
    assert_eq!(bspec(&["spectrum", "--bogus"]).status.code(), Some(2));
    let mut args = vec!["stability", "--alpha", "1"];
    args.extend(DEC);
    assert_eq!(bspec(&args).status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let mut sim = vec!["simulate", "--t-end", "3", "--format", "csv"];
    sim.extend(DEC);
    let first = bspec(&sim).stdout;
    assert!(!first.is_empty());
    assert_eq!(first, bspec(&sim).stdout);

    let mut reseeded = sim.clone();
    reseeded.extend(["--seed", "7"]);
    assert_ne!(first, bspec(&reseeded).stdout);

    let spectrum = ["spectrum", "--a", "1.3", "--c", "0.7", "--d", "0.4", "--e", "-2.5", "--n", "60"];
    assert_eq!(bspec(&spectrum).stdout, bspec(&spectrum).stdout);
}

#[test]
fn flags_override_config_file() {
    let path = scratch("config.json");
    fs::write(&path, r#"{"a": 1, "c": 1, "d": 0, "e": 1, "n": 7}"#).unwrap();
    let cfg = path.to_str().unwrap();
    let v = ok_json(&["spectrum", "--config", cfg]);
    assert_eq!(v["n"], 7);
    assert_eq!(v["params"]["b"], 2.0);
    let v = ok_json(&["spectrum", "--config", cfg, "--n", "9", "--e", "0.5"]);
    assert_eq!(v["n"], 9);
    assert_eq!(v["params"]["e"], 0.5);

    fs::write(&path, r#"{"a": 1, "unknown": 3}"#).unwrap();
    assert_eq!(bspec(&["spectrum", "--config", cfg]).status.code(), Some(2));
}

#[test]
fn output_flag_writes_file() {
    let path = scratch("spectrum.json");
    let _ = fs::remove_file(&path);
    let mut args = vec!["spectrum", "--output", path.to_str().unwrap()];
    args.extend(DEC);
    let out = bspec(&args);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid("spectrum", &v);
}

#[test]
fn init_file_sets_initial_state() {
    let path = scratch("init.csv");
    let mut text = String::from("h,x0,v0\n");
    for k in 0..=4 {
        text.push_str(&format!("{},{},0\n", -(k as f64), -(k as f64) + 0.25));
    }
    fs::write(&path, text).unwrap();
    let v = ok_json(&[
        "simulate", "--a", "1", "--c", "1", "--d", "0.5", "--e", "0.5", "--n", "4", "--t-end", "1",
        "--init", path.to_str().unwrap(),
    ]);
    assert_valid("simulate", &v);
    let x0: Vec<f64> = v["positions"][0]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(x0, vec![0.25, -0.75, -1.75, -2.75, -3.75]);
    // A shifted formation is already coherent.
    assert!(v["coherence_errors"][0].as_f64().unwrap() < 1e-12);

    fs::write(&path, "h,x0\n0,0\n").unwrap();
    let out = bspec(&[
        "simulate", "--a", "1", "--c", "1", "--d", "0.5", "--e", "0.5", "--n", "4", "--t-end", "1",
        "--init", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}
