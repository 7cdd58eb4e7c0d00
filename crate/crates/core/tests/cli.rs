use std::path::PathBuf;
use std::process::Command;

use hypcolor::harness::ExperimentReport;
use hypcolor::hypergraph::Hypergraph;

fn hypcolor(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hypcolor")).args(args).output().expect("binary runs")
}

fn universe(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/universe").join(name).display().to_string()
}

#[test]
fn gen_then_run_then_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let instance = dir.path().join("chain.json");
    let out =
        hypcolor(&["gen", "--family", "path_chain", "--n", "10", "--delta", "4", "--out", instance.to_str().unwrap()]);
    assert!(out.status.success());
    let h = Hypergraph::load(&instance).unwrap();
    assert_eq!((h.n_vertices(), h.n_edges(), h.delta()), (10, 10, 4));

    let result = dir.path().join("result.json");
    let out =
        hypcolor(&["run", "--instance", instance.to_str().unwrap(), "--seed", "3", "--out", result.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("outcome     success"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&result).unwrap()).unwrap();
    assert_eq!(json["outcome"]["kind"], "success");

    let out = hypcolor(&["oracle", "--instance", instance.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("feasible "));
}

#[test]
fn run_from_config_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(universe("ring.json"), dir.path().join("ring.json")).unwrap();
    let config = dir.path().join("run.json");
    std::fs::write(
        &config,
        r#"{"instance": "ring.json", "seed": 5, "alpha": 0.25, "u": 3, "beta": 2, "num_epochs": 2}"#,
    )
    .unwrap();
    let out = hypcolor(&["run", "--config", config.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("phase,active_at_start"));
}

#[test]
fn oracle_reports_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("triangle.json");
    Hypergraph::new(3, 2, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap().save(&path).unwrap();
    let out = hypcolor(&["oracle", "--instance", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "infeasible");
}

#[test]
fn experiment_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = hypcolor(&[
        "experiment",
        "success-rate",
        "--n",
        "16",
        "--delta",
        "8",
        "--alpha",
        "0.25",
        "--trials",
        "10",
        "--seed",
        "9",
        "--out",
        report.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = ExperimentReport::from_json(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r.trials.len(), 10);
    assert!(r.pass);
}

#[test]
fn search_prints_a_sequence() {
    let out = hypcolor(&[
        "search-colorings",
        "--instance",
        &universe("ring.json"),
        "--instance",
        &universe("split.json"),
        "--instance",
        &universe("hub.json"),
        "--budget",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let seq = hypcolor::coloring::ColoringSequence::from_json(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(seq.x(), 9);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hypcolor(&["run"]).status.code(), Some(2));
    assert_eq!(hypcolor(&["experiment", "nonsense"]).status.code(), Some(2));
    assert_eq!(hypcolor(&["gen", "--family", "torus", "--n", "4", "--delta", "2"]).status.code(), Some(2));
    assert_eq!(hypcolor(&["oracle", "--instance", "/no/such/file.json"]).status.code(), Some(2));
}
