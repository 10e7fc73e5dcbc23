use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qmis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmis"))
        .args(args)
        .env_remove("QMIS_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const FIGURE_ONE: &str = "5 4\n0 1\n0 2\n1 3\n1 4\n";

#[test]
fn solve_small_graph_reports_maximum_set() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", FIGURE_ONE);
    let out = qmis(&[
        "solve",
        &g,
        "--batches",
        "2",
        "--batch-size",
        "8",
        "--seed",
        "3",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = json(&out);
    assert_eq!(doc["best_size"], 3);
    assert_eq!(doc["instance"]["n"], 5);
    assert_eq!(doc["config"]["gamma"], 5.0);
    assert_eq!(doc["config"]["scheme"], "random");
}

#[test]
fn preset_and_overrides_are_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", FIGURE_ONE);
    let out = qmis(&[
        "solve",
        &g,
        "--preset",
        "er",
        "--batches",
        "1",
        "--batch-size",
        "4",
        "--no-complement-term",
        "--gamma",
        "2.5",
        "--init",
        "degree",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let cfg = &json(&out)["config"];
    assert_eq!(cfg["alpha"], 0.6);
    assert_eq!(cfg["iterations"], 150);
    assert_eq!(cfg["gamma"], 2.5);
    assert_eq!(cfg["complement_term"], false);
    assert_eq!(cfg["scheme"], "degree");
}

#[test]
fn csv_output_has_trace_columns() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", FIGURE_ONE);
    let report = dir.path().join("trace.csv");
    let out = qmis(&[
        "solve",
        &g,
        "--batches",
        "3",
        "--batch-size",
        "4",
        "--output",
        "csv",
        "-o",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(report).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("elapsed_ms,best_size"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn external_mean_init() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", FIGURE_ONE);
    let mean = write(dir.path(), "mean.txt", "1\n0\n0\n1\n1\n");
    let arg = format!("mean:{mean}");
    let out = qmis(&[
        "solve",
        &g,
        "--init",
        &arg,
        "--batches",
        "1",
        "--batch-size",
        "1",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = json(&out);
    assert_eq!(doc["best_set"], serde_json::json!([0, 3, 4]));

    let short = write(dir.path(), "short.txt", "1\n0\n");
    let arg = format!("mean:{short}");
    assert!(!qmis(&["solve", &g, "--init", &arg]).status.success());
}

#[test]
fn parse_failures_exit_nonzero_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.dimacs", "p edge 3 5\ne 1 2\n");
    let out = qmis(&["solve", &bad]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");

    let g = write(dir.path(), "g.txt", FIGURE_ONE);
    assert!(!qmis(&["solve", &g, "--gamma", "wat"]).status.success());
    assert!(!qmis(&["solve", &g, "--init", "sdp"]).status.success());
    assert!(!qmis(&["solve", &g, "--gamma", "0.5"]).status.success());
}

#[test]
fn workers_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", FIGURE_ONE);
    let out = Command::new(env!("CARGO_BIN_EXE_qmis"))
        .args(["solve", &g])
        .env("QMIS_WORKERS", "0")
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("worker"));
}

#[test]
fn gen_round_trips_through_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dimacs");
    let p = path.to_str().unwrap();
    let out = qmis(&[
        "gen", "gnm", "--n", "20", "--seed", "4", "--format", "dimacs", "-o", p,
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l == "p edge 20 95"));

    let first = stdout(&qmis(&[
        "gen", "er", "--n", "30", "--p", "0.2", "--seed", "1",
    ]));
    let again = stdout(&qmis(&[
        "gen", "er", "--n", "30", "--p", "0.2", "--seed", "1",
    ]));
    assert_eq!(first, again);
    assert!(!qmis(&["gen", "gnm", "--n", "4", "--m", "7"])
        .status
        .success());

    let oracle = json(&qmis(&["oracle", p]));
    let opt = oracle["optimum_size"].as_u64().unwrap();
    assert!(opt >= oracle["greedy_size"].as_u64().unwrap());
}

#[test]
fn oracle_lists_all_optima() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", FIGURE_ONE);
    let doc = json(&qmis(&["oracle", &g, "--all"]));
    assert_eq!(doc["optimum_size"], 3);
    assert_eq!(doc["all_optima"], serde_json::json!([[0, 3, 4], [2, 3, 4]]));
}

#[test]
fn check_reports_both_paths() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", FIGURE_ONE);
    let yes = json(&qmis(&["check", &g, "--set", "0,3,4"]));
    assert_eq!(yes["maximal_independent"], true);
    assert_eq!(yes["fixed_point"], true);
    let not_maximal = json(&qmis(&["check", &g, "--set", "3,4"]));
    assert_eq!(not_maximal["independent"], true);
    assert_eq!(not_maximal["maximal_independent"], false);
    assert_eq!(not_maximal["fixed_point"], false);
    assert!(!qmis(&["check", &g, "--set", "9"]).status.success());
}

#[test]
fn bench_suite_table_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let suite = write(
        dir.path(),
        "suite.json",
        r#"{
            "instances": [
                {"kind": "gnm", "n": 14, "seed": 1},
                {"kind": "er", "n": 16, "p": 0.3, "seed": 2}
            ],
            "config": {"batch_size": 8, "batches": 2, "iterations": 200},
            "verify_with_oracle": true
        }"#,
    );
    let table = qmis(&["bench", &suite]);
    assert!(table.status.success());
    let text = stdout(&table);
    assert!(text.contains("gnm(14,46)#1"));
    assert!(text.contains("mean of 2"));

    let doc = json(&qmis(&["bench", &suite, "--json", "--parallel"]));
    assert_eq!(doc["completed"], 2);
    assert_eq!(doc["failed"], 0);

    let empty = write(dir.path(), "empty.json", r#"{"instances": []}"#);
    assert!(qmis(&["bench", &empty]).status.success());
}
