use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_centroid-lattice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const S2: &str = r#"{"dim": 2, "vrep": [[-1, -1], [2, -1], [-1, 2]]}"#;
const SQUARE: &str = r#"{"dim": 2, "vrep": [[-2, -2], [2, -2], [2, 2], [-2, 2]]}"#;

#[test]
fn count_and_lambda1() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = write(dir.path(), "s2.json", S2);
    let out = run(&["count", &s2]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["computed"]["G"], json!(10));
    assert_eq!(r["computed"]["interior"], json!(1));

    let sq = write(dir.path(), "sq.json", SQUARE);
    let r = report(&run(&["lambda1", &sq]));
    assert_eq!(r["computed"]["lambda1"], json!("1/2"));
    assert_eq!(r["computed"]["witness"], json!([1, 0]));
}

#[test]
fn planar_bound_equality_exits_zero_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = write(dir.path(), "s2.json", S2);
    let saved = dir.path().join("report.json");
    let out = run(&["verify", "thm3", &s2, "--out", saved.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&saved).unwrap()).unwrap();
    assert_eq!(r["status"], json!("equal"));
    assert_eq!(r["certificates"].as_array().unwrap().len(), 1);

    let out = run(&["replay", saved.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["computed"]["identical"], json!(true));
}

#[test]
fn tampered_report_fails_replay() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = write(dir.path(), "s2.json", S2);
    let mut r = report(&run(&["count", &s2]));
    r["computed"]["G"] = json!(11);
    let saved = write(dir.path(), "bad.json", &r.to_string());
    let out = run(&["replay", &saved]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["computed"]["identical"], json!(false));
}

#[test]
fn gruenbaum_with_explicit_and_random_halfspaces() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = write(dir.path(), "s2.json", S2);
    let r = report(&run(&[
        "verify",
        "gruenbaum",
        &s2,
        "--halfspace",
        r#"{"a": [0, -1], "b": 0}"#,
    ]));
    assert_eq!(r["status"], json!("pass"));
    assert_eq!(r["computed"]["min_fraction"], json!("4/9"));

    let a = report(&run(&[
        "verify",
        "gruenbaum",
        &s2,
        "--seed",
        "3",
        "--halfspaces",
        "5",
    ]));
    let b = report(&run(&[
        "verify",
        "gruenbaum",
        &s2,
        "--seed",
        "3",
        "--halfspaces",
        "5",
    ]));
    assert_eq!(a["input_digest"], b["input_digest"]);
    assert_eq!(a["input"]["halfspaces"].as_array().unwrap().len(), 5);
}

#[test]
fn geometry_commands() {
    let dir = tempfile::tempdir().unwrap();
    let s2 = write(dir.path(), "s2.json", S2);
    assert_eq!(
        report(&run(&["volume", &s2]))["computed"]["volume"],
        json!("9/2")
    );
    assert_eq!(
        report(&run(&["centroid", &s2]))["computed"]["centroid"],
        json!(["0", "0"])
    );
    let g = report(&run(&["gauge", &s2, "[1, 1]"]));
    assert_eq!(g["computed"]["gauge"], json!("2"));
    let grid = report(&run(&["grid", "--dim", "2", "--rho", "1/2"]));
    assert_eq!(grid["computed"]["n"], json!(6));
    assert_eq!(grid["computed"]["size"], json!(28));
    let fam = report(&run(&["family", "--m", "5", "--float-preview"]));
    assert_eq!(fam["computed"]["interior"], json!(1));
    assert!(fam["float_preview"]["centroid"][1].is_f64());
}

#[test]
fn search_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"dim": 2, "coordinate_bound": 2, "modes": ["exhaustive_simplices", "family_triangles"], "family_max_m": 6}"#,
    );
    let replay = dir.path().join("replay");
    let out = run(&[
        "search",
        "--config",
        &cfg,
        "--jobs",
        "1",
        "--replay-dir",
        replay.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(&replay).unwrap().count(), 0);
    let r = report(&out);
    assert_eq!(r["status"], json!("pass"));
    assert_eq!(
        r["computed"]["conjecture"],
        json!("no counterexample found")
    );
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write(dir.path(), "sq.json", SQUARE);
    assert_eq!(run(&["verify", "simplex", &sq]).status.code(), Some(2));
    assert_eq!(run(&["count", "/nonexistent.json"]).status.code(), Some(2));
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"dim": 2, "vrep": [[0, 0], [1, 1]]}"#,
    );
    assert_eq!(run(&["volume", &bad]).status.code(), Some(2));
    assert_eq!(
        run(&["grid", "--dim", "2", "--rho", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn unmet_preconditions_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let off = write(
        dir.path(),
        "off.json",
        r#"{"dim": 2, "vrep": [[0, 0], [1, 0], [0, 1]]}"#,
    );
    assert_eq!(run(&["verify", "mp", &off]).status.code(), Some(2));
    let s2 = write(dir.path(), "s2.json", S2);
    let out = run(&[
        "verify",
        "gruenbaum",
        &s2,
        "--halfspace",
        r#"{"a": [0, 1], "b": -1}"#,
    ]);
    assert_eq!(out.status.code(), Some(2));
}
