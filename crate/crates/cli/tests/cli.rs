use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ratdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratdist"))
        .args(args)
        .env_remove("RATDIST_FACTOR_BUDGET")
        .output()
        .expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

fn kind<'a>(rs: &'a [Value], k: &str) -> Vec<&'a Value> {
    rs.iter().filter(|r| r["kind"] == k).collect()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn decide_exit_codes() {
    let out = ratdist(&["decide", "--points", "0,0 3,0 0,4"]);
    assert_eq!(code(&out), 0);
    let rs = records(&out);
    assert_eq!(rs[0]["kind"], "header");
    assert_eq!(rs[0]["schema"], 1);
    assert_eq!(kind(&rs, "frame").len(), 3);

    let out = ratdist(&["decide", "--points", "0,0 1,0 0,sqrt3"]);
    assert_eq!(code(&out), 0);
    let rs = records(&out);
    let v = kind(&rs, "verdict")[0];
    assert_eq!(v["dense"], true);
    let c = &v["certificate"];
    assert_eq!((c["x"].as_str(), c["y"].as_str(), c["z"].as_str()), (Some("1"), Some("1"), Some("2")));

    let out = ratdist(&["decide", "--sides-sq", "1", "1", "(3+sqrt5)/2"]);
    assert_eq!(code(&out), 1);
    let rs = records(&out);
    assert_eq!(kind(&rs, "verdict")[0]["certificate"]["kind"], "irrational_entry");

    let out = ratdist(&["decide", "--sides-sq", "3", "5", "8"]);
    assert_eq!(code(&out), 1);
    let rs = records(&out);
    assert_eq!(kind(&rs, "verdict")[0]["certificate"]["places"], serde_json::json!(["3", "5"]));

    assert_eq!(code(&ratdist(&["decide", "--points", "0,0 1,0"])), 2);
    assert_eq!(code(&ratdist(&["decide", "--points", "0,0 1,0 0,sqrt3+"])), 2);
}

#[test]
fn gen3_right_triangle() {
    let out = ratdist(&["gen3", "--points", "0,0 3,0 0,4", "--fibers", "5", "--multiples", "6"]);
    assert_eq!(code(&out), 0);
    let rs = records(&out);
    let sols = kind(&rs, "solution3");
    assert!(sols.len() >= 20, "{} solutions", sols.len());
    assert!(sols.iter().all(|s| s["verified"] == true));
    assert_eq!(rs[0]["config"]["seed"], 0);
}

#[test]
fn gen3_pentagon_not_admissible() {
    let out = ratdist(&["gen3", "--sides-sq", "1", "1", "(3+sqrt5)/2"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("not admissible"));
}

#[test]
fn gen2_count() {
    let out = ratdist(&["gen2", "--points", "0,0 1,0", "--count", "100"]);
    assert_eq!(code(&out), 0);
    let rs = records(&out);
    let sols = kind(&rs, "solution2");
    assert_eq!(sols.len(), 100);
    assert!(sols.iter().all(|s| s["verified"] == true));
}

#[test]
fn collinear_example_pair() {
    let out = ratdist(&["gen3-collinear", "--p", "1", "--q", "2", "--pairs", "3,1"]);
    assert_eq!(code(&out), 0);
    let rs = records(&out);
    let c = kind(&rs, "collinear")[0];
    assert_eq!(c["z"], "-19/10");
    assert_eq!(c["t"], "17/10");
    assert_eq!(c["v"], "18/25");
    assert_eq!([&c["d0"], &c["d"], &c["dprime"]], ["19/10", "11/10", "9/10"]);
    assert_eq!(c["verified"], true);

    let out = ratdist(&["gen3-collinear", "--points", "0,0 1,0 2,0", "--count", "30"]);
    assert_eq!(code(&out), 0);
    let rs = records(&out);
    let cs = kind(&rs, "collinear");
    assert!(!cs.is_empty());
    assert!(cs.iter().all(|c| c["verified"] == true && c["q"].is_object()));
}

#[test]
fn kummer_coefficients_and_residual() {
    let out = ratdist(&["kummer", "--a", "0", "--b", "1"]);
    assert_eq!(code(&out), 0);
    let rs = records(&out);
    let q = kind(&rs, "quartic")[0];
    assert_eq!(q["poly"].as_array().unwrap().len(), 8);
    assert_eq!(q["verified"], true);

    let out = ratdist(&["kummer", "--a", "0", "--b", "1", "--eval", "3/4", "1/4", "5/4"]);
    assert_eq!(code(&out), 0);
    assert_eq!(kind(&records(&out), "residual")[0]["residual"], "0");

    let out = ratdist(&["kummer", "--a", "0", "--b", "1", "--eval", "1", "1", "1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(code(&ratdist(&["kummer", "--a", "1", "--b", "0"])), 2);
}

#[test]
fn ring_commands() {
    let out = ratdist(&["ring-real", "--delta", "2", "--px", "3", "--py", "4", "--count", "5"]);
    assert_eq!(code(&out), 0);
    let rs = records(&out);
    let pts = kind(&rs, "realquad_line");
    assert_eq!(pts.len(), 5);
    assert!(pts.iter().any(|p| p["y"]["a"] == "4" && p["y"]["b"] == "6" && p["d_p"]["a"] == "9"));
    assert!(pts.iter().all(|p| p["verified"] == true));

    for (re, im) in [("3", "4"), ("1", "1")] {
        let out = ratdist(&["ring-gauss", "--alpha-re", re, "--alpha-im", im, "--count", "10"]);
        assert_eq!(code(&out), 0);
        let rs = records(&out);
        assert_eq!(kind(&rs, "gaussian_system")[0]["verified"], true);
        let sols = kind(&rs, "gaussian");
        if re == "3" {
            assert!(sols.iter().filter(|s| s["point"].is_array()).count() >= 10);
        }
        assert!(sols.len() >= 10, "alpha = {re}+{im}i: {}", sols.len());
        assert!(sols.iter().all(|s| s["verified"] == true));
    }
    assert_eq!(code(&ratdist(&["ring-real", "--delta", "4", "--px", "3", "--py", "4"])), 2);
}

#[test]
fn verify_points() {
    let out = ratdist(&["verify", "--points", "0,0 1,0 1,1 0,1", "--q", "1/2,1/2"]);
    assert_eq!(code(&out), 1);
    let rs = records(&out);
    let ds = kind(&rs, "distance");
    assert_eq!(ds.len(), 4);
    for d in ds {
        assert_eq!(d["dist_sq"]["a"], "1/2");
        assert!(d["distance"].is_null());
    }

    let out = ratdist(&["verify", "--points", "0,0 1,0", "--q", "1,-3/4"]);
    assert_eq!(code(&out), 0);
    let rs = records(&out);
    let ds: Vec<_> = kind(&rs, "distance").iter().map(|d| d["distance"].clone()).collect();
    assert_eq!(ds, ["5/4", "3/4"]);

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let out = ratdist(&["verify", "--points-file", empty.to_str().unwrap(), "--q", "1,1"]);
    assert_eq!(code(&out), 0);
    assert!(kind(&records(&out), "distance").is_empty());

    assert_eq!(code(&ratdist(&["verify", "--points", "0,0", "--q", "1/0,1"])), 2);
}

#[test]
fn search4_cases() {
    let out = ratdist(&["search4", "--points", "0,0 1,0 1,1 0,1", "--height", "8"]);
    assert_eq!(code(&out), 0);
    assert!(kind(&records(&out), "hit").is_empty());

    let out = ratdist(&["search4", "--points", "0,0 3,0 0,4", "--height", "6"]);
    assert_eq!(code(&out), 0);
    let rs = records(&out);
    let hits = kind(&rs, "hit");
    assert!(!hits.is_empty());
    assert!(hits.iter().all(|h| h["verified"] == true));

    assert_eq!(code(&ratdist(&["search4", "--points", "0,0 1,0 1,0 0,1"])), 2);
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join(name);
    let mut full = args.to_vec();
    full.extend(["--out", path.to_str().unwrap()]);
    let out = ratdist(&full);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    path
}

const RUNS: &[&[&str]] = &[
    &["decide", "--points", "0,0 3,0 0,4"],
    &["gen2", "--points", "0,0 1,0", "--count", "30", "--seed", "7"],
    &["gen3", "--points", "0,0 3,0 0,4", "--fibers", "3", "--seed", "2"],
    &["gen3-collinear", "--points", "0,0 1,0 3,0", "--count", "20"],
    &["kummer", "--a", "1/2", "--b", "3"],
    &["ring-real", "--delta", "3", "--px", "3", "--py", "4", "--extend", "2"],
    &["ring-gauss", "--alpha-re", "1", "--alpha-im", "1"],
    &["verify", "--points", "0,0 1,0", "--q", "1,-3/4"],
    &["search4", "--points", "0,0 3,0 0,4", "--height", "4"],
];

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in RUNS.iter().enumerate() {
        let path = run_to(dir.path(), &format!("run{i}.jsonl"), args);
        let out = ratdist(&["verify", "--file", path.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        let rs = records(&out);
        assert!(kind(&rs, "note").is_empty(), "{args:?}");
        assert_eq!(kind(&rs, "summary")[0]["all_verified"], true);
    }
}

#[test]
fn tampered_file_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = run_to(dir.path(), "g2.jsonl", &["gen2", "--points", "0,0 1,0", "--count", "5"]);
    let text = std::fs::read_to_string(&path).unwrap();
    let line = text.lines().nth(1).unwrap();
    let mut v: Value = serde_json::from_str(line).unwrap();
    v["d0"] = Value::String("7".into());
    let bad = text.replacen(line, &v.to_string(), 1);
    std::fs::write(&path, bad).unwrap();
    let out = ratdist(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(kind(&records(&out), "note").len(), 1);
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for (i, args) in RUNS.iter().enumerate() {
        let a = run_to(dir.path(), &format!("a{i}.jsonl"), args);
        let b = run_to(dir.path(), &format!("b{i}.jsonl"), args);
        assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap(), "{args:?}");
    }
}

#[test]
fn factor_budget_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_ratdist"))
        .args(["kummer", "--a", "0", "--b", "1"])
        .env("RATDIST_FACTOR_BUDGET", "5000:100")
        .output()
        .unwrap();
    let rs = records(&out);
    assert_eq!(rs[0]["factor_budget"]["trial_limit"], 5000);
    assert_eq!(rs[0]["factor_budget"]["rho_iterations"], 100);
    let out = Command::new(env!("CARGO_BIN_EXE_ratdist"))
        .args(["kummer", "--a", "0", "--b", "1"])
        .env("RATDIST_FACTOR_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}
