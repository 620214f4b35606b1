use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn permcrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permcrit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&stdout(out)).unwrap()
}

#[test]
fn enumerate_json_is_exact() {
    let out = permcrit(&["enumerate", "--parties", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        concat!(
            "[\n",
            "  {\"roles\":\"FF\",\"label\":\"identity\",\"permutation\":[1,2,3,4]},\n",
            "  {\"roles\":\"FL\",\"label\":\"QT\",\"permutation\":[1,2,4,3]},\n",
            "  {\"roles\":\"HT\",\"label\":\"R\",\"permutation\":[1,3,2,4]}\n",
            "]\n"
        )
    );
}

#[test]
fn enumerate_table_lists_every_class() {
    let out = permcrit(&["enumerate", "--parties", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("HTTH") && text.contains("R+R'"));
    assert!(text.trim_end().ends_with("23 classes"));
}

#[test]
fn count_with_oracle() {
    let out = permcrit(&["count", "--parties", "3", "--oracle", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["formula_count"], 7);
    assert_eq!(v["enumerated_count"], 7);
    assert_eq!(v["oracle_count"], 7);
    assert_eq!(v["per_row_counts"]["R"], 3);

    let refused = permcrit(&["count", "--parties", "5", "--oracle"]);
    assert_eq!(refused.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("refused"));
}

#[test]
fn evaluate_builtins() {
    let out = permcrit(&["evaluate", "--builtin", "chessboard", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let records = v["records"].as_array().unwrap();
    let by_label = |l: &str| records.iter().find(|r| r["label"] == l).unwrap();
    assert_eq!(by_label("R")["violated"], true);
    assert!((by_label("R")["trace_norm"].as_f64().unwrap() - 7.0 / 6.0).abs() < 1e-9);
    assert_eq!(by_label("QT")["violated"], false);

    let mixed = permcrit(&[
        "evaluate",
        "--builtin",
        "mixed",
        "--dim",
        "2",
        "--parties",
        "3",
        "--format",
        "json",
    ]);
    let v = json(&mixed);
    assert!(v["records"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["violated"] == false));

    let subset = permcrit(&[
        "evaluate",
        "--builtin",
        "bell",
        "--class",
        "1,2",
        "--format",
        "json",
    ]);
    assert_eq!(json(&subset)["records"].as_array().unwrap().len(), 2);
}

#[test]
fn evaluate_state_file_and_diagnostics() {
    let mut good = tempfile::NamedTempFile::new().unwrap();
    write!(
        good,
        r#"{{"d":2,"r":1,"re":[[0.75,0],[0,0.25]],"im":[[0,0],[0,0]]}}"#
    )
    .unwrap();
    let out = permcrit(&["evaluate", "--state", good.path().to_str().unwrap()]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let mismatch = permcrit(&[
        "evaluate",
        "--state",
        good.path().to_str().unwrap(),
        "--dim",
        "3",
    ]);
    assert_eq!(mismatch.status.code(), Some(2));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(
        bad,
        r#"{{"d":2,"r":1,"re":[[1.5,0],[0,-0.5]],"im":[[0,0],[0,0]]}}"#
    )
    .unwrap();
    let out = permcrit(&["evaluate", "--state", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("positive semidefinite"));

    let missing = permcrit(&["evaluate", "--state", "/nonexistent/state.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["enumerate"][..],
        &["enumerate", "--parties", "x"],
        &["enumerate", "--parties", "0"],
        &["evaluate"],
        &["evaluate", "--builtin", "bell", "--state", "f.json"],
        &["evaluate", "--builtin", "mixed"],
        &[
            "verify",
            "rule5",
            "--parties",
            "2",
            "--dim",
            "2",
            "--samples",
            "0",
            "--seed",
            "1",
        ],
        &[
            "verify",
            "distinctness",
            "--parties",
            "7",
            "--dim",
            "2",
            "--samples",
            "1",
            "--seed",
            "1",
        ],
        &["beta-sweep", "--steps", "3"],
        &["frobnicate"],
    ] {
        assert_eq!(permcrit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_suites_pass_and_are_deterministic() {
    let args = [
        "verify",
        "rule5",
        "--parties",
        "3",
        "--dim",
        "2",
        "--samples",
        "5",
        "--seed",
        "42",
        "--format",
        "json",
    ];
    let a = permcrit(&args);
    let b = permcrit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["passed"], true);

    for suite in ["distinctness", "norm-preserving", "soundness"] {
        let out = permcrit(&[
            "verify",
            suite,
            "--parties",
            "3",
            "--dim",
            "2",
            "--samples",
            "2",
            "--seed",
            "1",
        ]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn distinctness_coincidences_warn_without_failing() {
    // full-rank three-qubit states are often PPT, pinning QT norms to 1
    let out = permcrit(&[
        "verify",
        "distinctness",
        "--parties",
        "3",
        "--dim",
        "2",
        "--samples",
        "1",
        "--seed",
        "1",
        "--rank",
        "8",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn beta_sweep_rows() {
    let out = permcrit(&["beta-sweep", "--steps", "10", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    let max = |label: &str| {
        rows.iter().find(|r| r["label"] == label).unwrap()["max_threshold"]
            .as_f64()
            .unwrap()
    };
    assert!(max("R+R'") > max("R").max(max("R+QT")));
    assert_eq!(max("QT"), 0.0);
    assert_eq!(max("2QT"), 0.0);
}
