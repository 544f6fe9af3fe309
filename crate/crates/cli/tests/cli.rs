use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use orichrome::fixtures;
use orichrome::full::TargetFile;
use orichrome::graph::io::to_edge_list;
use serde_json::Value;
use tempfile::TempDir;

fn orichrome(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orichrome"))
        .args(args)
        .env_remove("ORICHROME_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_exit_codes() {
    let dir = TempDir::new().unwrap();
    let path = file(&dir, "path.og", "3 2\n0 1\n1 2\n");
    let out = orichrome(&["solve", "chi2", s(&path)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["value"], 3);

    let wheel = file(&dir, "wheel.og", &to_edge_list(&fixtures::sink_wheel()));
    let out = orichrome(&["solve", "chio", s(&wheel)]);
    assert_eq!(code(&out), 0);
    assert!(json(&out)["value"].as_u64().unwrap() <= 4);
    assert_eq!(json(&out)["witness"]["map"].as_object().unwrap().len(), 7);

    assert_eq!(code(&orichrome(&["solve", "chio", s(&path), "--k-max", "8"])), 2);
    let bad = file(&dir, "bad.og", "3 2\n0 1\n1 two\n");
    let out = orichrome(&["solve", "chio", s(&bad)]);
    assert_eq!(code(&out), 1);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn full_commands() {
    let dir = TempDir::new().unwrap();
    let out = orichrome(&["full", "minimal", "2", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["N"], 6);

    let two_class = serde_json::to_string(&TargetFile::from_target(&fixtures::two_class_example())).unwrap();
    let two_class = file(&dir, "two_class.json", &two_class);
    let out = orichrome(&["full", "verify", s(&two_class)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["verified"], false);
    assert_eq!(json(&out)["witness"]["subset"], serde_json::json!([4, 6]));

    let target = dir.path().join("t.json");
    let out = orichrome(&["full", "sample", "5", "2", "--seed", "1", "--output", s(&target)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["N"], 104);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(saved["certificate"]["verified"], true);
    let again = orichrome(&["full", "sample", "5", "2", "--seed", "1"]);
    assert_eq!(serde_json::from_slice::<Value>(&again.stdout).unwrap(), saved);

    assert_eq!(code(&orichrome(&["full", "sample", "4", "2"])), 1);
}

#[test]
fn colour_commands() {
    let dir = TempDir::new().unwrap();
    let grid = orichrome(&["gen", "grid", "5", "5", "--seed", "3"]);
    let grid = file(&dir, "grid5x5.og", &String::from_utf8(grid.stdout).unwrap());
    let out = orichrome(&["colour", s(&grid), "--g", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["report"]["valid"], true);

    let empty = file(&dir, "empty.og", "0 0\n");
    let out = orichrome(&["colour", s(&empty), "--g", "2"]);
    assert_eq!(json(&out)["report"]["colours_used"], 0);

    let k7 = orichrome(&["gen", "complete", "7"]);
    let k7 = file(&dir, "k7.og", &String::from_utf8(k7.stdout).unwrap());
    assert_eq!(code(&orichrome(&["colour", s(&k7), "--g", "1"])), 3);
    assert_eq!(code(&orichrome(&["colour", s(&k7), "--g", "2"])), 0);

    let k14 = orichrome(&["gen", "complete", "14"]);
    let k14 = file(&dir, "k14.og", &String::from_utf8(k14.stdout).unwrap());
    let out = orichrome(&["colour", s(&k14), "--g", "2"]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
}

#[test]
fn bounds_table() {
    let out = orichrome(&["bounds", "11", "20"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 10);
    for (g, row) in (11..).zip(&rows) {
        let lower: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        let x = (g - 1) as f64;
        let ln2 = 2f64.ln();
        assert!((lower - ln2 * x / (x.ln() + ln2.ln() - ln2)).abs() < 1e-5);
    }
    let out = orichrome(&["bounds", "10", "10"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("10,DomainError,DomainError"));
}

#[test]
fn seed_fallback_and_determinism() {
    let by_flag = orichrome(&["gen", "triangulation", "40", "--seed", "9"]);
    let by_env = Command::new(env!("CARGO_BIN_EXE_orichrome"))
        .args(["gen", "triangulation", "40"])
        .env("ORICHROME_SEED", "9")
        .output()
        .unwrap();
    assert_eq!(by_flag.stdout, by_env.stdout);
    assert_ne!(by_flag.stdout, orichrome(&["gen", "triangulation", "40", "--seed", "10"]).stdout);

    let dir = TempDir::new().unwrap();
    let g = file(&dir, "g.og", &String::from_utf8(by_flag.stdout).unwrap());
    let a = orichrome(&["colour", s(&g), "--g", "3", "--seed", "4"]);
    let b = orichrome(&["colour", s(&g), "--g", "3", "--seed", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_reports_each_criterion() {
    let out = orichrome(&["selftest", "--only", "5,6"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.contains("PASS")));
    // the hand-coded example is not full, so criterion 1 fails
    assert_eq!(code(&orichrome(&["selftest", "--only", "1"])), 4);
    assert_eq!(code(&orichrome(&["selftest", "--only", "10"])), 1);
}
