use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn homog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homog"))
        .args(args)
        .env("THREADS", "1")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn check_m_matches_golden_text() {
    let m = fixture("M.json");
    let out = homog(&["check", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let golden = include_str!("golden/check_m.txt");
    assert_eq!(stdout(&out), golden);
}

#[test]
fn check_m_json() {
    let m = fixture("M.json");
    let out = homog(&["--format", "json", "check", m.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["homogeneous"], true);
    assert_eq!(v["set_homogeneous"], true);
    assert_eq!(v["uniformly_homogeneous"], false);
    assert_eq!(v["witness_class"], serde_json::json!([0, 1]));
    assert_eq!(v["obstruction"]["witness"], serde_json::json!([0, 1, 4, 5, 2, 3]));
}

#[test]
fn check_reports_verdicts_with_exit_zero() {
    let c4 = fixture("c4.json");
    let out = homog(&["check", c4.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("uniformly_homogeneous: true"));
    let p = fixture("path2.json");
    let out = homog(&["check", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("homogeneous: false"));
}

#[test]
fn cyclic_golden_values() {
    for (args, expected) in [
        (&["cyclic", "eta", "6", "1"][..], "{2: 1/2, 3: 1/3}"),
        (&["cyclic", "lemma", "3", "6", "2", "4"][..], "5"),
        (&["cyclic", "extend", "3", "4", "8"][..], "7"),
        (&["cyclic", "kapply", "6", "{2: 1/2, 3: 1/3}"][..], "{2: 1/2, 3: 2/3}"),
    ] {
        let out = homog(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
        assert_eq!(stdout(&out).trim(), expected, "{args:?}");
    }
    let out = homog(&["--format", "json", "cyclic", "eta", "6", "1"]);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["value"], "{2: 1/2, 3: 1/3}");
}

#[test]
fn cyclic_uniform_exit_codes() {
    let out = homog(&["cyclic", "uniform", "12"]);
    assert_eq!(out.status.code(), Some(0));
    let out = homog(&["cyclic", "uniform", "16"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("E(3·3) ≠ E(3)·E(3)"));
}

#[test]
fn malformed_input_names_the_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"signature\": [], \"size\": 2,\n  \"relations\": [oops]}").unwrap();
    let out = homog(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("bad.json"), "{err}");
    assert!(err.contains("line 2"), "{err}");

    let out = homog(&["check", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["bogus"][..],
        &["cyclic", "lemma", "3", "6", "3", "4"],
        &["cyclic", "eta", "6", "6"],
        &["cyclic", "extend", "2", "4", "8"],
        &["search", "--max-vertices", "6"],
        &["search", "--max-vertices", "9", "--range", "0:10"],
        &["search", "--max-vertices", "3", "--range", "10:2"],
    ] {
        let out = homog(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn obstruction_needs_a_homogeneous_input() {
    let p = fixture("path2.json");
    let out = homog(&["obstruction", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not homogeneous"));

    let e = fixture("ens3.json");
    let out = homog(&["obstruction", e.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(1 2)"), "{}", stdout(&out));
}

#[test]
fn verify_paper_reports_the_cyclic_failure() {
    let out = homog(&["--format", "json", "verify-paper"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 13);
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["xiii"]);
}

#[test]
fn search_json_witnesses_reload() {
    let lo: u64 = 4836068055 & !((1 << 20) - 1);
    let range = format!("{lo}:{}", lo + (1 << 20));
    let out = homog(&[
        "--format", "json", "search", "--max-vertices", "6", "--range", &range, "--samples", "10",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    let dir = tempfile::tempdir().unwrap();
    let witnesses = v["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 2);
    for (i, w) in witnesses.iter().enumerate() {
        let path = dir.path().join(format!("w{i}.json"));
        std::fs::write(&path, serde_json::to_string(w).unwrap()).unwrap();
        let out = homog(&["check", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        let text = stdout(&out);
        assert!(text.contains("homogeneous: true"), "{text}");
        assert!(text.contains("uniformly_homogeneous: false"), "{text}");
    }
}

#[test]
fn search_is_deterministic_across_chunkings() {
    let run = |chunks: &str| {
        let mut v = json(&homog(&[
            "--format", "json", "search", "--max-vertices", "4", "--chunks", chunks, "--samples", "5",
        ]));
        v.as_object_mut().unwrap().remove("wall_time_seconds");
        v
    };
    assert_eq!(run("1"), run("16"));
}
