use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn twogreedy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twogreedy"))
        .args(args)
        .env_remove("TWOGREEDY_JOBS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twogreedy-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn run_reports_summary() {
    let v = json(&twogreedy(&["run", "--n", "1000", "--seed", "7"]));
    assert_eq!(v["n"], 1000);
    assert_eq!(v["seed"], 7);
    assert!(v["kappa"].as_u64().unwrap() >= 1);
    assert_eq!(v["exposures"], 1500);
    assert_eq!(v["u_edges"].as_u64().unwrap() + v["paths"].as_u64().unwrap() + v["singletons"].as_u64().unwrap(), 1000);
}

#[test]
fn odd_vertex_count_is_a_usage_error() {
    let out = twogreedy(&["run", "--n", "999"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(!out.stderr.is_empty());
}

#[test]
fn unknown_arguments_are_usage_errors() {
    assert_eq!(twogreedy(&["bogus"]).status.code(), Some(64));
    assert_eq!(twogreedy(&["run", "--n", "ten"]).status.code(), Some(64));
    assert_eq!(twogreedy(&["run", "--n", "100", "--stride", "0"]).status.code(), Some(64));
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(twogreedy(&["--help"]).status.code(), Some(0));
    assert_eq!(twogreedy(&["scan", "--help"]).status.code(), Some(0));
}

#[test]
fn traces_are_reproducible() {
    let a = scratch("trace-a.csv");
    let b = scratch("trace-b.csv");
    for p in [&a, &b] {
        let out = twogreedy(&["run", "--n", "2000", "--seed", "11", "--trace", p.to_str().unwrap(), "--stride", "1"]);
        assert!(out.status.success());
    }
    let x = std::fs::read(&a).unwrap();
    assert_eq!(x, std::fs::read(&b).unwrap());
    let text = String::from_utf8(x).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# twogreedy trace"));
    assert_eq!(lines.next().unwrap(), "i,t,step_type,sigma,delta,Y,Z,zeta,A,B,M,alpha");
    assert!(text.lines().last().unwrap().contains(",end,"));
}

#[test]
fn scan_reports_slope_and_is_reproducible() {
    let out = scratch("scan.json");
    let args = ["scan", "--grid", "10000,100000", "--runs", "5", "--seed", "3", "--out", out.to_str().unwrap()];
    let first = json(&twogreedy(&args));
    assert!(first["slope"].as_f64().unwrap().is_finite());
    assert_eq!(first["per_n"].as_array().unwrap().len(), 2);
    let saved: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(saved, first);
    assert!(out.with_extension("csv").exists());
    let second = json(&twogreedy(&args));
    assert_eq!(first, second);
}

#[test]
fn scan_parallelism_does_not_change_results() {
    let args = ["scan", "--grid", "2000,4000", "--runs", "4", "--seed", "9"];
    let one = json(&twogreedy(&[&args[..], &["--jobs", "1"]].concat()));
    let four = json(&twogreedy(&[&args[..], &["--jobs", "4"]].concat()));
    assert_eq!(one, four);
}

#[test]
fn scan_rejects_zero_runs() {
    assert_eq!(twogreedy(&["scan", "--grid", "1000", "--runs", "0"]).status.code(), Some(64));
}

#[test]
fn trajectory_default_grid() {
    let v = json(&twogreedy(&["trajectory"]));
    assert!(v["max_cubic_residual"].as_f64().unwrap() <= 1e-9);
    assert!(v["max_ode_discrepancy"].as_f64().unwrap() <= 1e-6);
    assert_eq!(v["bound_violations"], 0);
}

#[test]
fn trajectory_single_point_is_the_start() {
    let out = scratch("trajectory.csv");
    let v = json(&twogreedy(&["trajectory", "--grid-points", "1", "--out", out.to_str().unwrap()]));
    assert_eq!(v["grid_points"], 1);
    let text = std::fs::read_to_string(&out).unwrap();
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    assert_eq!(&row[..4], &["0", "1", "2", "1"]);
}

#[test]
fn oracle_modes() {
    let v = json(&twogreedy(&["oracle", "--n", "2"]));
    assert_eq!(v["violations"], 0);
    assert_eq!(v["pairings"], 15);
    let v = json(&twogreedy(&["oracle", "--n", "4", "--mode", "mc", "--trials", "100000", "--seed", "1"]));
    assert_eq!(v["violations"], 0);
    assert_eq!(twogreedy(&["oracle", "--n", "6"]).status.code(), Some(64));
}
