use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn hamlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamlab"))
        .args(args)
        .env_remove("HAMLAB_EXACT_MAX_NODES")
        .env_remove("HAMLAB_EXACT_MAX_SECS")
        .env_remove("HAMLAB_ORACLE_MAX_STEPS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn edge_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn solve_triangle_from_file() {
    let f = edge_file("# triangle\n3 3\n0 1\n1 2\n2 0\n");
    let path = f.path().to_str().unwrap();
    for algo in ["oracle", "exact", "fuzzy"] {
        let o = hamlab(&["solve", "--input", path, "--algo", algo]);
        assert_eq!(o.status.code(), Some(0), "{algo}");
        let out = stdout(&o);
        assert!(out.contains("verdict: yes"), "{algo}: {out}");
        assert!(out.contains("circuit: 0-1-2"), "{algo}: {out}");
    }
}

#[test]
fn solve_json_and_dump() {
    let o = hamlab(&[
        "solve", "--graph", "star", "--algo", "exact", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["has_circuit"], Value::Bool(false));

    let o = hamlab(&["solve", "--graph", "p3", "--algo", "fuzzy", "--dump"]);
    assert!(stdout(&o).starts_with("0 0 0 1 2\n1 1 1 2 2\n2 2 1 3 2\n"));
}

#[test]
fn diff_clean_instance_exits_zero() {
    let o = hamlab(&["diff", "--graph", "k4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema_version"], "hamlab-report/1");
    assert!(v.get("timings").is_none());
    let o = hamlab(&["diff", "--graph", "k4", "--timings"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["timings"]["fuzzy_secs"].is_number());
}

#[test]
fn diff_disagreement_exits_ten() {
    // the Petersen graph has no Hamiltonian circuit
    let o = hamlab(&["diff", "--graph", "petersen"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["oracle"]["verdict"], "no");
    let fuzzy_positive = v["fuzzy"]["nonempty"] == Value::Bool(true);
    assert_eq!(o.status.code(), Some(if fuzzy_positive { 10 } else { 0 }));
}

#[test]
fn sweep_writes_csv_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("per_n.csv");
    let o = hamlab(&["sweep", "--max-n", "4", "--csv", csv.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["totals"]["graphs_tested"], 72);
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn sweep_refuses_large_without_override() {
    let o = hamlab(&["sweep", "--max-n", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn random_campaign_is_reproducible() {
    let args = [
        "random", "--n", "6", "--p", "0.5", "--trials", "20", "--seed", "4",
    ];
    let a = hamlab(&args);
    let b = hamlab(&args);
    assert!(matches!(a.status.code(), Some(0 | 10)));
    assert_eq!(a.stdout, b.stdout);
    // the fan-out mode is recorded in the config; the rest must match
    let seq = hamlab(&[&["--sequential"][..], &args[..]].concat());
    let strip = |o: &Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("config");
        v
    };
    assert_eq!(strip(&a), strip(&seq));
}

#[test]
fn minimize_prints_edge_list() {
    let o = hamlab(&[
        "minimize",
        "--graph",
        "k5",
        "--predicate",
        "oracle-hamiltonian",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let body: String = out
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    assert_eq!(body, "3 3\n0 1\n0 2\n1 2\n");
}

#[test]
fn usage_errors_exit_one() {
    let f = edge_file("3 2\n0 1\n1 1\n");
    assert_eq!(
        hamlab(&["solve", "--input", f.path().to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        hamlab(&["solve", "--graph", "k3", "--start", "5"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(hamlab(&["solve", "--graph", "nope"]).status.code(), Some(1));
    assert_eq!(
        hamlab(&[
            "minimize",
            "--graph",
            "k4",
            "--predicate",
            "oracle-non-hamiltonian"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_ne!(hamlab(&["solve"]).status.code(), Some(0));
}
