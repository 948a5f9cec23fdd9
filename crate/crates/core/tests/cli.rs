use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cartesian"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_grid(dir: &Path, name: &str, m: i64) -> String {
    let mut text = String::from("u,v\n");
    for a in 0..m {
        for b in 0..m {
            text.push_str(&format!("{a},{b}\n"));
        }
    }
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn elekes_count() {
    let out = run(&["count", "--poly", "x*s-y+t", "--construct", "elekes:3,3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["status"], "success");
    assert_eq!(doc["result"]["count"], "45");
}

#[test]
fn axes_witness() {
    let out = run(&["cartesian-test", "--poly", "x*s+y*t", "--g", "x", "--k", "t"]);
    assert_eq!(out.status.code(), Some(0));
    let w = &json(&out)["result"]["witness"];
    assert_eq!(w["H"], "s");
    assert_eq!(w["L"], "y");
}

#[test]
fn unit_distances_on_grid() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write_grid(dir.path(), "grid3.csv", 3);
    let out = run(&["values", "--mode", "repeated", "--poly", "(x-s)^2+(y-t)^2", "--a", "1", "--points", &grid]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["count"], "24");
    let out = run(&["values", "--mode", "distinct", "--poly", "(x-s)^2+(y-t)^2", "--points", &grid]);
    let doc = json(&out);
    assert_eq!(doc["result"]["count"], "6");
    assert_eq!(doc["result"]["values"], serde_json::json!(["0", "1", "2", "4", "5", "8"]));
}

#[test]
fn exit_codes() {
    let failure = run(&["cartesian-test", "--poly", "x*s-y+t", "--g", "x", "--k", "t"]);
    assert_eq!(failure.status.code(), Some(2));
    let doc = json(&failure);
    assert_eq!(doc["status"], "failure");
    assert_eq!(doc["result"]["certificate"]["tag"], "coefficient-not-divisible");

    let syntax = run(&["cartesian-test", "--poly", "x s", "--g", "x", "--k", "t"]);
    assert_eq!(syntax.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&syntax.stderr).contains("column"));

    let wrong_plane = run(&["cartesian-test", "--poly", "x*s", "--g", "s", "--k", "t"]);
    assert_eq!(wrong_plane.status.code(), Some(1));

    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["count"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["grid-witness", "--explain"]).status.code(), Some(0));
}

#[test]
fn grid_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let grid = write_grid(dir.path(), "g.csv", 3);
    let out = run(&["grid-witness", "--poly", "x*s-y+t", "--i", &grid, "--j", &grid]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["result"]["error"], "grid-not-contained");
}

#[test]
fn bad_csv_reports_row() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    std::fs::write(&path, "u,v\n1,2\n3,q\n").unwrap();
    let out = run(&["count", "--poly", "x-s", "--points", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 3, column 2"));
}

#[test]
fn reruns_and_configs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    let args = ["count", "--construct", "saturation:6,11", "--save-config", cfg.to_str().unwrap()];
    let first = run(&args);
    assert_eq!(first.status.code(), Some(0));
    let second = run(&args[..3]);
    assert_eq!(first.stdout, second.stdout);
    let replay = run(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(replay.status.code(), Some(0));
    assert_eq!(first.stdout, replay.stdout);
    assert_eq!(json(&first)["result"]["count"], "36");
}

#[test]
fn construct_writes_point_files_and_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("inst");
    let out = run(&["construct", "--spec", "elekes:2,2", "--out-dir", out_dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let p = out_dir.join("P.csv");
    let q = out_dir.join("Q.csv");
    let pairs = dir.path().join("pairs.csv");
    let out = run(&[
        "count", "--poly", "x*s-y+t", "--p", p.to_str().unwrap(), "--q", q.to_str().unwrap(),
        "--emit-pairs", pairs.to_str().unwrap(),
    ]);
    assert_eq!(json(&out)["result"]["count"], "7");
    let text = std::fs::read_to_string(&pairs).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text.starts_with("p,q,pu,pv,qu,qv\n"));
}

#[test]
fn emitted_polynomials_parse_back() {
    let out = run(&["construct", "--spec", "saturation:4,3"]);
    let doc = json(&out);
    let f = doc["result"]["system"][0].as_str().unwrap().to_string();
    let w = &doc["result"]["witness"];
    let out = run(&["cartesian-test", "--poly", &f, "--g", w["G"].as_str().unwrap(), "--k", w["K"].as_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for key in ["G", "K", "H", "L"] {
        let text = json(&out)["result"]["witness"][key].as_str().unwrap().to_string();
        let p = cartesian::cli::parse_polynomial(&text).unwrap();
        assert_eq!(p.to_string(), text);
    }
}

#[test]
fn incidence_guard_and_timing() {
    let out = run(&["incidence", "--construct", "elekes:3,3", "--s", "3", "--t", "3", "--budget", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["incidence", "--construct", "elekes:3,3", "--timing"]);
    let doc = json(&out);
    assert_eq!(doc["result"]["kst"]["free"], true);
    assert!(doc["timing_ms"].is_number());
}
