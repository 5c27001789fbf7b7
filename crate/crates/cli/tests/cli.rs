use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hypwalk::config::ExperimentConfig;
use hypwalk::report::{Report, SeedSource};
use hypwalk::{aggregate, parse_config, read_records, write_report};
use serde_json::Value;

const DRIFT: &str = r#"
id = "smoke"
kind = "drift"
group = "free(2)"
seed = 11
n_grid = [8, 16, 32]
trials = 25

[distribution]
uniform_generators = true
"#;

fn hypwalk(args: &[&str], env_seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hypwalk"));
    cmd.args(args).env_remove("HYPWALK_SEED");
    if let Some(s) = env_seed {
        cmd.env("HYPWALK_SEED", s);
    }
    cmd.output().expect("spawn hypwalk")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_writes_three_files_and_replay_reproduces_them() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "drift.toml", DRIFT);
    let out = tmp.path().join("out");
    let o = hypwalk(&["run", &cfg, "--out", s(&out), "--threads", "2"], None);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let summary = fs::read_to_string(out.join("summary.csv")).unwrap();
    assert_eq!(summary.lines().count(), 1 + 3);
    assert!(summary.starts_with("n,estimate,ci_lo,ci_hi"));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), summary);

    let records = fs::read_to_string(out.join("records.jsonl")).unwrap();
    assert_eq!(records.lines().count(), 75);

    let report: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["complete"], true);
    assert_eq!(report["seed_source"], "config");
    assert_eq!(report["master_seed"], 11);
    assert_eq!(report["config"]["kind"], "drift");

    let replay = hypwalk(&["replay", s(&out.join("records.jsonl"))], None);
    assert!(replay.status.success());
    assert_eq!(String::from_utf8(replay.stdout).unwrap(), summary);
    assert!(String::from_utf8_lossy(&replay.stderr).contains("reproduced exactly"));
}

#[test]
fn report_aggregates_equal_recomputation_from_records() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "drift.toml", DRIFT);
    let out = tmp.path().join("out");
    assert!(hypwalk(&["run", &cfg, "--out", s(&out)], None).status.success());
    let report: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    let recomputed = serde_json::to_value(aggregate(&read_records(&out.join("records.jsonl")).unwrap())).unwrap();
    assert_eq!(report["aggregates"], recomputed);
}

#[test]
fn records_do_not_depend_on_worker_count() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "drift.toml", DRIFT);
    let mut bodies = Vec::new();
    for threads in ["1", "3", "8"] {
        let out = tmp.path().join(format!("out{threads}"));
        assert!(hypwalk(&["run", &cfg, "--out", s(&out), "--threads", threads], None).status.success());
        bodies.push(fs::read(out.join("records.jsonl")).unwrap());
    }
    assert!(bodies.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn seed_sources_are_recorded() {
    let tmp = tempfile::tempdir().unwrap();
    let unseeded = DRIFT.replace("seed = 11\n", "");
    let cfg = write(tmp.path(), "drift.toml", &unseeded);

    let o = hypwalk(&["run", &cfg, "--out", s(&tmp.path().join("a"))], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("HYPWALK_SEED"));

    let o = hypwalk(&["run", &cfg, "--out", s(&tmp.path().join("b"))], Some("77"));
    assert!(o.status.success());
    let r: Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("b/report.json")).unwrap()).unwrap();
    assert_eq!((r["seed_source"].as_str(), r["master_seed"].as_u64()), (Some("environment"), Some(77)));

    let o = hypwalk(&["run", &cfg, "--out", s(&tmp.path().join("c")), "--seed", "5"], Some("77"));
    assert!(o.status.success());
    let r: Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("c/report.json")).unwrap()).unwrap();
    assert_eq!((r["seed_source"].as_str(), r["master_seed"].as_u64()), (Some("override"), Some(5)));

    let o = hypwalk(&["run", &cfg, "--out", s(&tmp.path().join("d"))], Some("not-a-number"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn different_seeds_give_different_records() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "drift.toml", DRIFT);
    for seed in ["1", "2"] {
        assert!(hypwalk(&["run", &cfg, "--out", s(&tmp.path().join(seed)), "--seed", seed], None).status.success());
    }
    let a = fs::read(tmp.path().join("1/records.jsonl")).unwrap();
    let b = fs::read(tmp.path().join("2/records.jsonl")).unwrap();
    assert_ne!(a, b);
}

#[test]
fn validate_lists_schema_errors_with_keys() {
    let tmp = tempfile::tempdir().unwrap();
    let good = write(tmp.path(), "good.toml", DRIFT);
    let o = hypwalk(&["validate", &good], None);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("ok: smoke (drift)"));

    let bad =
        write(tmp.path(), "bad.toml", &DRIFT.replace("\"drift\"", "\"drfit\"").replace("trials = 25", "trials = 0"));
    let o = hypwalk(&["validate", &bad], None);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("kind: unknown experiment kind \"drfit\""), "{err}");
    assert!(err.contains("trials: must be at least 1"), "{err}");

    let o = hypwalk(&["validate", s(&tmp.path().join("missing.toml"))], None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn budget_failures_exit_two_with_a_partial_report() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(
        tmp.path(),
        "lox.toml",
        r#"
kind = "lox-products"
group = "product(2,3)"
seed = 3
n_grid = [4]
trials = 3
distribution = { support = [{ word = "a", weight = 1 }] }
"#,
    );
    let out = tmp.path().join("out");
    let o = hypwalk(&["run", &cfg, "--out", s(&out)], None);
    assert_eq!(o.status.code(), Some(2));
    let r: Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(r["complete"], false);
    assert_eq!(r["failure"]["budget_exceeded"], true);
    assert_eq!(fs::read_to_string(out.join("records.jsonl")).unwrap(), "");
}

#[test]
fn replay_detects_an_edited_summary() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write(tmp.path(), "drift.toml", DRIFT);
    let out = tmp.path().join("out");
    assert!(hypwalk(&["run", &cfg, "--out", s(&out)], None).status.success());
    let summary = out.join("summary.csv");
    let edited = fs::read_to_string(&summary).unwrap().replacen("8,", "9,", 1);
    fs::write(&summary, edited).unwrap();
    assert_eq!(hypwalk(&["replay", s(&out.join("records.jsonl"))], None).status.code(), Some(1));
}

#[test]
fn empty_reports_are_valid_files() {
    let tmp = tempfile::tempdir().unwrap();
    let config: ExperimentConfig = parse_config(DRIFT).unwrap();
    let report = Report {
        tool: "hypwalk",
        version: "0",
        experiment_id: config.id.clone(),
        config,
        master_seed: 0,
        seed_source: SeedSource::Override,
        threads: 1,
        complete: true,
        failure: None,
        record_count: 0,
        aggregates: Vec::new(),
        wall_times: Vec::new(),
        wall_time_seconds: 0.0,
        records: Vec::new(),
    };
    write_report(&report, tmp.path()).unwrap();
    assert_eq!(fs::read_to_string(tmp.path().join("records.jsonl")).unwrap(), "");
    assert_eq!(fs::read_to_string(tmp.path().join("summary.csv")).unwrap().lines().count(), 1);
    let json: Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["record_count"], 0);
}

#[test]
fn shipped_configs_validate() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut n = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let o = hypwalk(&["validate", s(&path)], None);
        assert!(o.status.success(), "{}: {}", path.display(), String::from_utf8_lossy(&o.stderr));
        n += 1;
    }
    assert!(n >= 8);
}
