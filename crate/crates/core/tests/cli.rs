//! End-to-end runs of the `fluxsat` binary: exit codes, artifacts, schemas, determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fluxsat"))
}

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

fn config_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_schema(schema: &str, doc: &Value) {
    let schema = read_json(&schema_dir().join(schema));
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}\n{doc:#}");
}

fn write_config(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

fn run(args: &[&str]) -> i32 {
    bin().args(args).output().unwrap().status.code().unwrap()
}

fn simulate_config() -> Value {
    json!({
        "model": { "kind": "speed_limited_pm", "exponent": 2.0, "dimension": 1 },
        "grid": { "r_max": 3.0, "cells": 128 },
        "datum": { "type": "bump", "height": 1.0, "radius": 1.0, "power": 2.0 },
        "run": { "t_end": 0.3, "trace_interval": 0.05, "snapshot_times": [0.1, 0.3], "x0": 1.2 }
    })
}

fn waiting_config(l_values: Value) -> Value {
    json!({
        "model": { "kind": "relativistic_pm", "exponent": 2.0, "dimension": 1 },
        "grid": { "r_max": 2.0, "cells": 128 },
        "datum": { "edge": 1.0, "plateau_depth": 0.5 },
        "run": { "t_max": 40.0, "x0_offset": 0.05, "l_values": l_values }
    })
}

#[test]
fn shipped_configs_match_their_schemas() {
    for entry in fs::read_dir(config_dir()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_owned();
        let schema = if name.starts_with("simulate") {
            "simulate_config.schema.json"
        } else if name.starts_with("waiting_time") {
            "waiting_time_config.schema.json"
        } else if name.starts_with("m_params") {
            "m_sub_params.schema.json"
        } else {
            panic!("unclassified config {name}");
        };
        assert_schema(schema, &read_json(&path));
    }
}

#[test]
fn simulate_writes_valid_artifacts() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "sim.json", &simulate_config());
    let out = tmp.path().join("out");
    assert_eq!(run(&["--out", out.to_str().unwrap(), "simulate", cfg.to_str().unwrap()]), 0);
    let summary = read_json(&out.join("summary.json"));
    assert_schema("simulate_summary.schema.json", &summary);
    let m0 = summary["mass_initial"].as_f64().unwrap();
    let m1 = summary["mass_final"].as_f64().unwrap();
    assert!((m1 - m0).abs() <= 1e-12 * m0);
    assert!(out.join("trace.csv").exists());
    assert!(out.join("snapshot_0000.csv").exists());
    assert!(out.join("snapshot_0001.csv").exists());
    let trace = fs::read_to_string(out.join("trace.csv")).unwrap();
    assert!(trace.starts_with("t,mass,support_radius,u_at_x0"));
}

#[test]
fn simulate_is_byte_deterministic() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "sim.json", &simulate_config());
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for d in [&a, &b] {
        assert_eq!(run(&["--out", d.to_str().unwrap(), "simulate", cfg.to_str().unwrap()]), 0);
    }
    for f in ["trace.csv", "summary.json", "snapshot_0000.csv", "snapshot_0001.csv"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f} differs");
    }
}

#[test]
fn verify_auto_passes_and_reports_validate() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().to_str().unwrap();
    let m = ["--out", out, "verify", "--family", "m", "--auto", "--L", "1", "--R", "1", "--N", "1", "--exponent", "2"];
    let rel = ["--out", out, "verify", "--family", "rel", "--auto", "--L", "1", "--R", "1", "--N", "1", "--exponent", "2"];
    assert_eq!(run(&m), 0);
    assert_eq!(run(&rel), 0);
    for family in ["m", "rel"] {
        let report = read_json(&tmp.path().join(format!("certification_{family}.json")));
        assert_schema("certification_report.schema.json", &report);
        assert_eq!(report["pass"], json!(true));
    }
}

#[test]
fn verify_is_deterministic_for_a_fixed_seed() {
    let tmp = TempDir::new().unwrap();
    let mut files = Vec::new();
    for d in ["a", "b"] {
        let out = tmp.path().join(d);
        let args = ["--out", out.to_str().unwrap(), "--seed", "7", "verify", "--family", "rel", "--auto", "--L", "2", "--R", "1", "--N", "1", "--exponent", "2"];
        assert_eq!(run(&args), 0);
        files.push(fs::read(out.join("certification_rel.json")).unwrap());
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn verify_rejects_speed_above_window_with_exit_4() {
    let tmp = TempDir::new().unwrap();
    let params = config_dir().join("m_params_speed_above_window.json");
    let args = ["--out", tmp.path().to_str().unwrap(), "verify", "--family", "m", "--params", params.to_str().unwrap()];
    assert_eq!(run(&args), 4);
    let report = read_json(&tmp.path().join("certification_m.json"));
    assert_schema("certification_report.schema.json", &report);
    assert_eq!(report["pass"], json!(false));
}

#[test]
fn params_missing_a_field_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let p = write_config(tmp.path(), "p.json", &json!({
        "exponent": 2.0, "dimension": 1, "b": 1.0, "ell": 1.2, "k": 2.0, "s": 0.5, "center": [0.0]
    }));
    let args = ["--out", tmp.path().to_str().unwrap(), "verify", "--family", "m", "--params", p.to_str().unwrap()];
    assert_eq!(run(&args), 2);
}

#[test]
fn verify_without_a_source_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(run(&["--out", tmp.path().to_str().unwrap(), "verify", "--family", "m"]), 2);
}

#[test]
fn datum_wider_than_grid_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let mut cfg = simulate_config();
    cfg["datum"]["radius"] = json!(4.0);
    let p = write_config(tmp.path(), "sim.json", &cfg);
    assert_eq!(run(&["--out", tmp.path().to_str().unwrap(), "simulate", p.to_str().unwrap()]), 2);
}

#[test]
fn negative_end_time_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let mut cfg = simulate_config();
    cfg["run"]["t_end"] = json!(-1.0);
    let p = write_config(tmp.path(), "sim.json", &cfg);
    assert_eq!(run(&["--out", tmp.path().to_str().unwrap(), "simulate", p.to_str().unwrap()]), 2);
}

#[test]
fn unknown_config_field_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let mut cfg = simulate_config();
    cfg["run"]["tend"] = json!(1.0);
    let p = write_config(tmp.path(), "sim.json", &cfg);
    assert_eq!(run(&["--out", tmp.path().to_str().unwrap(), "simulate", p.to_str().unwrap()]), 2);
}

#[test]
fn unwritable_output_is_an_io_failure() {
    let tmp = TempDir::new().unwrap();
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let cfg = write_config(tmp.path(), "sim.json", &simulate_config());
    let out = blocker.join("sub");
    assert_eq!(run(&["--out", out.to_str().unwrap(), "simulate", cfg.to_str().unwrap()]), 3);
}

#[test]
fn empty_l_list_is_a_config_error() {
    let tmp = TempDir::new().unwrap();
    let p = write_config(tmp.path(), "wt.json", &waiting_config(json!([])));
    assert_eq!(run(&["--out", tmp.path().to_str().unwrap(), "waiting-time", p.to_str().unwrap()]), 2);
}

#[test]
fn waiting_time_study_writes_valid_artifacts() {
    let tmp = TempDir::new().unwrap();
    let p = write_config(tmp.path(), "wt.json", &waiting_config(json!([1.0, 2.0, 4.0])));
    let out = tmp.path().join("out");
    assert_eq!(run(&["--out", out.to_str().unwrap(), "waiting-time", p.to_str().unwrap()]), 0);
    for k in 0..3 {
        let r = read_json(&out.join(format!("waiting_time_{k:02}.json")));
        assert_schema("waiting_time_report.schema.json", &r);
        assert_eq!(r["reached"], json!(true));
    }
    let summary = read_json(&out.join("scaling_summary.json"));
    assert_schema("scaling_summary.schema.json", &summary);
    let csv = fs::read_to_string(out.join("scaling.csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
}

#[test]
fn bounds_prints_and_writes_valid_json() {
    let tmp = TempDir::new().unwrap();
    let o = bin()
        .args(["--out", tmp.path().to_str().unwrap(), "bounds", "--kind", "rel", "--exponent", "2", "--N", "1", "--L", "1"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let printed: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_schema("bounds.schema.json", &printed);
    assert_eq!(printed, read_json(&tmp.path().join("bounds.json")));
    assert_eq!(printed["t_upper"], json!(16.0));
}

#[test]
fn subsolution_params_round_trip_through_schema() {
    let tmp = TempDir::new().unwrap();
    let out = tmp.path().to_str().unwrap();
    for (family, file, schema) in [
        ("m", "subsolution_m_params.json", "m_sub_params.schema.json"),
        ("rel", "subsolution_rel_params.json", "rel_sub_params.schema.json"),
    ] {
        let args = ["--out", out, "subsolution", "--family", family, "--auto", "--L", "1", "--R", "1", "--N", "1", "--exponent", "2", "--points", "11"];
        assert_eq!(run(&args), 0, "{family}");
        let params = read_json(&tmp.path().join(file));
        assert_schema(schema, &params);
        let csv = fs::read_to_string(tmp.path().join(format!("subsolution_{family}.csv"))).unwrap();
        assert_eq!(csv.lines().count(), 12);
        let path = tmp.path().join(file);
        let back = ["--out", out, "verify", "--family", family, "--params", path.to_str().unwrap()];
        assert_eq!(run(&back), 0, "{family} re-verify");
    }
}
