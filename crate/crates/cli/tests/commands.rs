use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn cliffmap(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cliffmap"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn build_reports_pair_counts() {
    let dir = tempfile::tempdir().unwrap();
    let v = stdout_json(&cliffmap(
        dir.path(),
        &[
            "build",
            "hopping1d",
            "--sites",
            "10",
            "--range",
            "6",
            "-o",
            "h.json",
        ],
    ));
    assert_eq!(v["n_terms"], 2 * 39);
    let v = stdout_json(&cliffmap(
        dir.path(),
        &[
            "build",
            "hopping1d",
            "--sites",
            "20",
            "--range",
            "6",
            "-o",
            "h20.json",
        ],
    ));
    assert_eq!(v["n_terms"], 2 * 99);
    let file = read_json(&dir.path().join("h.json"));
    assert_eq!(file["n_modes"], 10);

    let v = stdout_json(&cliffmap(
        dir.path(),
        &["build", "exchange", "-o", "ex.json"],
    ));
    assert_eq!(
        (v["n_modes"].clone(), v["n_terms"].clone()),
        (4.into(), 2.into())
    );

    let copied = stdout_json(&cliffmap(
        dir.path(),
        &["build", "file", "ex.json", "-o", "copy.json"],
    ));
    assert_eq!(copied["n_terms"], 2);
}

#[test]
fn hubbard_encoding_has_349_terms() {
    let dir = tempfile::tempdir().unwrap();
    stdout_json(&cliffmap(
        dir.path(),
        &["build", "hubbard2d", "--side", "6", "-o", "hub.json"],
    ));
    let v = stdout_json(&cliffmap(
        dir.path(),
        &["encode", "hub.json", "-o", "q.json"],
    ));
    assert_eq!(v["n_terms"], 349);
    let v = stdout_json(&cliffmap(
        dir.path(),
        &["encode", "hub.json", "--drop-identity", "-o", "q2.json"],
    ));
    assert_eq!(v["n_terms"], 348);
    assert_eq!(read_json(&dir.path().join("q.json"))["n_qubits"], 72);
}

#[test]
fn invalid_parameters_exit_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let out = cliffmap(
        dir.path(),
        &["build", "hopping1d", "--sites", "3", "--range", "3"],
    );
    assert_eq!(out.status.code(), Some(2));
    let out = cliffmap(dir.path(), &["encode", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = cliffmap(dir.path(), &["optimize", "--output-dir", "o"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(
        dir.path().join("bad.toml"),
        "output_dir = \"o\"\nbogus = 1\n[model]\nkind = \"exchange\"\n",
    )
    .unwrap();
    let out = cliffmap(dir.path(), &["optimize", "--config", "bad.toml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_exits_with_run_code() {
    let dir = tempfile::tempdir().unwrap();
    stdout_json(&cliffmap(
        dir.path(),
        &["build", "exchange", "-o", "ex.json"],
    ));
    std::fs::write(dir.path().join("taken"), "").unwrap();
    let out = cliffmap(
        dir.path(),
        &[
            "optimize",
            "--input",
            "ex.json",
            "--output-dir",
            "taken",
            "--t-max",
            "10",
        ],
    );
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn compare_lists_all_three_mappings() {
    let dir = tempfile::tempdir().unwrap();
    stdout_json(&cliffmap(
        dir.path(),
        &["build", "single-ops", "--n", "4", "-o", "o.json"],
    ));
    let v = stdout_json(&cliffmap(dir.path(), &["compare", "o.json"]));
    assert_eq!(v["costs"]["jw"], "5/2");
    assert_eq!(v["costs"]["balanced"], "2");
    assert_eq!(v["best"], "balanced");
}

#[test]
fn enumerate_trees_respects_bound() {
    let dir = tempfile::tempdir().unwrap();
    stdout_json(&cliffmap(
        dir.path(),
        &["build", "hopping1d", "--sites", "5", "-o", "c.json"],
    ));
    let out = cliffmap(dir.path(), &["enumerate-trees", "c.json"]);
    assert_eq!(out.status.code(), Some(2));
    stdout_json(&cliffmap(
        dir.path(),
        &["build", "hopping1d", "--sites", "2", "-o", "p.json"],
    ));
    let out = cliffmap(dir.path(), &["enumerate-trees", "p.json", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let v = stdout_json(&cliffmap(
        dir.path(),
        &["enumerate-trees", "p.json", "-o", "r.json"],
    ));
    assert_eq!(v["mappings"], 120);
    assert_eq!(read_json(&dir.path().join("r.json")), v);
    assert!(v["argmin"]["qubit"].is_number());
}

#[test]
fn optimize_writes_replayable_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("campaign.toml"),
        r#"
output_dir = "out"
gate_set = "C"
t_max = 20000
cost = "avg"
seeds = { master = 0, count = 10 }
workers = 2

[model]
kind = "single-ops"
n = 4

[schedule]
c1 = 1.0
c2 = 1.0
c3 = 10.0
t_min = 0
"#,
    )
    .unwrap();
    let v = stdout_json(&cliffmap(
        dir.path(),
        &["optimize", "--config", "campaign.toml"],
    ));
    assert_eq!(v["best_cost"], "2");
    assert!(v["percent_reduction"].as_f64().unwrap() >= 0.0);
    let out = dir.path().join("out");
    let summary = std::fs::read(out.join("summary.json")).unwrap();

    // flags override the file; a rerun with fewer workers reproduces the summary
    let v = stdout_json(&cliffmap(
        dir.path(),
        &[
            "optimize",
            "--config",
            "campaign.toml",
            "--output-dir",
            "again",
            "--workers",
            "1",
        ],
    ));
    assert_eq!(v["output_dir"], "again");
    assert_eq!(
        std::fs::read(dir.path().join("again/summary.json")).unwrap(),
        summary
    );
    let cfg = read_json(&dir.path().join("again/config.json"));
    assert_eq!(cfg["workers"], 1);
    assert_eq!(cfg["schedule"]["c3"], 10.0);

    let s: Value = serde_json::from_slice(&summary).unwrap();
    let seed = s["best_seed"].as_u64().unwrap();
    let record = read_json(&out.join(format!("run_{seed}.json")));
    assert_eq!(record["best_cost"], s["best_cost"]);
    let circuit = std::fs::read_to_string(out.join(format!("circuit_{seed}.txt"))).unwrap();
    let gates = cliffmap::gate::parse_circuit(&circuit).unwrap();
    let initial = cliffmap::QubitHamiltonian::load(&out.join("initial.json")).unwrap();
    let replayed = initial.conjugate(&gates).unwrap();
    assert_eq!(
        replayed.avg_weight().unwrap(),
        num_rational::Ratio::from_integer(2)
    );
    let trace = std::fs::read_to_string(out.join(format!("trace_{seed}.csv"))).unwrap();
    assert!(trace.starts_with("t,cost\n0,"));
}

#[test]
fn optimize_with_best_first_search() {
    let dir = tempfile::tempdir().unwrap();
    stdout_json(&cliffmap(
        dir.path(),
        &["build", "exchange", "-o", "ex.json"],
    ));
    let v = stdout_json(&cliffmap(
        dir.path(),
        &[
            "optimize",
            "--input",
            "ex.json",
            "--output-dir",
            "bfs",
            "--algorithm",
            "bfs",
            "--cost",
            "total",
            "--gate-set",
            "CH",
        ],
    ));
    let best: u64 = v["best_cost"].as_str().unwrap().parse().unwrap();
    assert!(best <= 20);
}

#[test]
fn verify_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = cliffmap(dir.path(), &["verify"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("96/96"));
    assert_eq!(text.lines().count(), 5);
}
