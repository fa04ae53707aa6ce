//! End-to-end runs of the command-line tool.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn talpha(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_talpha"))
        .args(args)
        .current_dir(dir)
        .env_remove("TALPHA_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn decompose_then_validate() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(talpha(&["gen", "family", "hole(9)", "-o", "c9.gr"], p)
        .status
        .success());
    let out = talpha(&["decompose", "c9.gr", "--td-out", "c9.td"], p);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["stats"]["width"], 2);
    let out = talpha(&["validate", "c9.gr", "c9.td"], p);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["valid"], true);
    assert_eq!(r["stats"]["independence"], 2);
    assert_eq!(r["stats"]["cover"], 2);
}

#[test]
fn invalid_decomposition_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("p3.gr"), "p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
    std::fs::write(p.join("bad.td"), "s td 2 2 3\nb 1 1 2\nb 2 3\n").unwrap();
    let out = talpha(&["validate", "p3.gr", "bad.td"], p);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], false);
}

#[test]
fn mwis_with_oracle_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(talpha(&["gen", "family", "hole(5)", "-o", "c5.gr"], p)
        .status
        .success());
    std::fs::write(
        p.join("c5.w"),
        "w 1 3 1\nw 2 1 1\nw 3 1 1\nw 4 1 1\nw 5 1 1\n",
    )
    .unwrap();
    let out = talpha(&["mwis", "c5.gr", "c5.w", "--oracle"], p);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["agree"], true);
    assert_eq!(r["td"]["value"], "4");
    assert_eq!(r["td"]["set"], serde_json::json!([1, 3]));
}

#[test]
fn oracle_on_uniform_hole() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(talpha(&["gen", "family", "hole(9)", "-o", "c9.gr"], p)
        .status
        .success());
    let w: String = (1..=9).map(|v| format!("w {v} 1 9\n")).collect();
    std::fs::write(p.join("c9.w"), w).unwrap();
    let out = talpha(&["oracle", "c9.gr", "c9.w"], p);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let r = json(&out);
    assert!(r["clique_cover"].as_array().unwrap().len() <= 2);
}

#[test]
fn structure_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(talpha(&["gen", "family", "theta(2,2,3)", "-o", "t.gr"], p)
        .status
        .success());
    let r = json(&talpha(&["structure", "theta", "t.gr"], p));
    assert_eq!(r["search"]["result"], "found");
    let r = json(&talpha(
        &["structure", "wheel", "t.gr", "--filter", "even"],
        p,
    ));
    assert_eq!(r["search"]["result"], "absent");
    let r = json(&talpha(&["check", "t.gr"], p));
    assert_eq!(r["class"]["C"]["verdict"], "out");
}

#[test]
fn corpus_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let args = [
        "--seed",
        "11",
        "gen",
        "corpus",
        "--count",
        "4",
        "--n-lo",
        "8",
        "--n-hi",
        "12",
        "--out-dir",
    ];
    let a = talpha(&[&args[..], &["a"]].concat(), p);
    let b = talpha(&[&args[..], &["b"]].concat(), p);
    assert!(a.status.success() && b.status.success());
    let ma = std::fs::read_to_string(p.join("a/manifest.jsonl")).unwrap();
    assert_eq!(ma.lines().count(), 4);
    for line in ma.lines() {
        let e: Value = serde_json::from_str(line).unwrap();
        let name = e["path"].as_str().unwrap();
        assert_eq!(
            std::fs::read(p.join("a").join(name)).unwrap(),
            std::fs::read(p.join("b").join(name)).unwrap()
        );
    }
}

#[test]
fn reports_are_deterministic_without_timing() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert!(talpha(
        &["--seed", "3", "gen", "random", "--n", "14", "-o", "g.gr"],
        p
    )
    .status
    .success());
    let a = talpha(&["decompose", "g.gr", "--trace"], p);
    let b = talpha(&["decompose", "g.gr", "--trace"], p);
    assert_eq!(a.stdout, b.stdout);
    let t = json(&talpha(&["--timing", "decompose", "g.gr"], p));
    assert!(t["timing_ms"].is_u64());
}

#[test]
fn bench_prints_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = talpha(
        &["bench", "--count", "3", "--n-lo", "8", "--n-hi", "10"],
        dir.path(),
    );
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "instance,n,m,width,independence,cover,runtime_ms");
    assert_eq!(lines.len(), 4);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    assert_eq!(talpha(&["frobnicate"], p).status.code(), Some(2));
    std::fs::write(p.join("bad.gr"), "p edge 2 1\ne 1 5\n").unwrap();
    assert_eq!(talpha(&["check", "bad.gr"], p).status.code(), Some(2));
    assert_eq!(
        talpha(&["gen", "family", "nonsense"], p).status.code(),
        Some(2)
    );
}

#[test]
fn missing_file_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = talpha(&["check", "absent.gr"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"].is_string());
}
