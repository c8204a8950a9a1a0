use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qcrys(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcrys"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn identity_verdicts() {
    for (a, z) in [("1", "1"), ("2", "-2")] {
        let o = qcrys(&["identity", "--a", a, "--z", z]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("PASS"));
    }
    let o = qcrys(&["identity", "--a", "1", "--z", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["holds"], Value::Bool(false));
    let o = qcrys(&["identity", "--a", "1", "--z", "0", "--classical"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn identity_bad_integer_is_usage_error() {
    assert_eq!(
        qcrys(&["identity", "--a", "x", "--z", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qcrys(&["identity", "--a", "0", "--z", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn crystal_graphs() {
    let o = qcrys(&[
        "crystal", "--type", "A", "--n", "3", "--lambda", "2", "--format", "json",
    ]);
    let v = json(&o);
    assert_eq!(v["states"].as_array().unwrap().len(), 6);

    let o = qcrys(&[
        "crystal", "--type", "A", "--n", "3", "--lambda", "2", "--format", "dot",
    ]);
    let dot = stdout(&o);
    assert_eq!(
        dot.lines()
            .filter(|l| l.trim_start().starts_with('s') && !l.contains("->"))
            .count(),
        6
    );

    let o = qcrys(&[
        "crystal", "--type", "C", "--n", "1", "--lambda", "0", "--cap", "4", "--format", "json",
    ]);
    let v = json(&o);
    assert_eq!(v["states"], serde_json::json!([[0], [2], [4]]));
    assert_eq!(v["edges"].as_array().unwrap().len(), 2);

    let o = qcrys(&[
        "crystal", "--type", "A", "--n", "2", "--lambda", "0", "--format", "json",
    ]);
    let v = json(&o);
    assert_eq!(v["states"].as_array().unwrap().len(), 1);
    assert!(v["edges"].as_array().unwrap().is_empty());
}

#[test]
fn crystal_invalid_spec() {
    let o = qcrys(&["crystal", "--type", "A", "--n", "1", "--lambda", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn rep_pauli_pair() {
    let o = qcrys(&[
        "rep",
        "--type",
        "A",
        "--n",
        "2",
        "--lambda",
        "1",
        "--which",
        "classical",
        "--node",
        "1",
    ]);
    let v = json(&o);
    let raise = v["raise"].as_array().unwrap();
    let lower = v["lower"].as_array().unwrap();
    assert_eq!(raise.len(), 1);
    assert_eq!(raise[0]["from"], serde_json::json!([0, 1]));
    assert_eq!(raise[0]["to"], serde_json::json!([1, 0]));
    assert_eq!(raise[0]["coeff"], serde_json::json!({"1": "1/1"}));
    assert_eq!(lower[0]["from"], raise[0]["to"]);
    assert_eq!(lower[0]["to"], raise[0]["from"]);
}

#[test]
fn rep_deformed_at_one_is_classical() {
    let base = [
        "rep", "--type", "A", "--n", "3", "--lambda", "3", "--node", "2",
    ];
    let mut a = base.to_vec();
    a.extend(["--which", "deformed", "--q", "1"]);
    let mut b = base.to_vec();
    b.extend(["--which", "classical"]);
    assert_eq!(qcrys(&a).stdout, qcrys(&b).stdout);
}

#[test]
fn rep_type_c_imaginary_radicand() {
    let o = qcrys(&[
        "rep",
        "--type",
        "C",
        "--n",
        "1",
        "--lambda",
        "0",
        "--cap",
        "8",
        "--which",
        "classical",
        "--node",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sqrt(-2)"));
}

#[test]
fn rep_node_out_of_range() {
    let o = qcrys(&[
        "rep", "--type", "A", "--n", "2", "--lambda", "1", "--node", "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_type_a() {
    let o = qcrys(&[
        "verify", "--type", "A", "--n", "3", "--lambda", "3", "--q", "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["summary"]["boundary"], 0);
}

#[test]
fn verify_type_c_has_boundary() {
    let o = qcrys(&[
        "verify", "--type", "C", "--n", "2", "--lambda", "2", "--cap", "12", "--q", "3/5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["summary"]["boundary"].as_u64().unwrap() > 0);
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn verify_cz() {
    let o = qcrys(&["verify", "--type", "A", "--n", "2", "--lambda", "8", "--cz"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let reports = v["reports"].as_array().unwrap();
    assert!(reports.iter().any(|r| r["relation_id"] == "map"));
    for r in reports {
        assert_eq!(r["summary"]["fail"], 0);
        assert_eq!(r["summary"]["boundary"], 0);
    }
}

#[test]
fn verify_report_schema() {
    let o = qcrys(&[
        "verify", "--type", "C", "--n", "1", "--lambda", "0", "--cap", "6", "--q", "2", "--margin",
        "0",
    ]);
    let v = json(&o);
    let r = &v["reports"][0];
    for key in ["relation_id", "spec", "q", "summary", "failures"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["q"], "1/1");
}

#[test]
fn verify_config_error_exit_2_and_no_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(
        &cfg,
        "[[model]]\ntype = \"A\"\nn = 2\nlambda = 1\nq = [\"0.5\"]\n",
    )
    .unwrap();
    let out = dir.path().join("report.json");
    let o = qcrys(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn verify_config_file_and_threads_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("suite.toml");
    std::fs::write(
        &cfg,
        "[[model]]\ntype = \"C\"\nn = [1, 2]\nlambda = 1\nq = [\"1\", \"1/2\"]\nrelations = [\"ladder\", \"serre\"]\n",
    )
    .unwrap();
    let run = |threads: &str, name: &str| {
        let out = dir.path().join(name);
        let o = Command::new(env!("CARGO_BIN_EXE_qcrys"))
            .args([
                "verify",
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
            ])
            .env("QCRYS_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(out).unwrap()
    };
    assert_eq!(run("1", "a.json"), run("3", "b.json"));
}

#[test]
fn verify_margin_zero_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("m0.toml");
    std::fs::write(
        &cfg,
        "margin = 0\nword_paths = false\n[[model]]\ntype = \"C\"\nn = 1\nlambda = 0\ncap = 6\nq = [\"2\"]\nrelations = [\"ladder\"]\nclassical = false\n",
    )
    .unwrap();
    let o = qcrys(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failures = v["reports"][0]["failures"].as_array().unwrap();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0]["state"], serde_json::json!([6]));
}

#[test]
fn verify_print_default_parses() {
    let o = qcrys(&["verify", "--print-default"]);
    assert!(stdout(&o).contains("[[model]]"));
}

#[test]
fn boson_realizations() {
    let o = qcrys(&[
        "boson",
        "--realization",
        "vdj",
        "--q",
        "3/2",
        "--cutoff",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["summary"]["pass"], 56);

    let o = qcrys(&[
        "boson",
        "--realization",
        "paper",
        "--q",
        "1",
        "--cutoff",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));

    let o = qcrys(&[
        "boson",
        "--realization",
        "paper",
        "--q",
        "2",
        "--cutoff",
        "8",
    ]);
    let v = json(&o);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 9);
    assert!(v["top_spin"]
        .as_array()
        .unwrap()
        .iter()
        .all(|t| t["holds"] == true));
}

#[test]
fn boson_bad_q() {
    assert_eq!(
        qcrys(&["boson", "--realization", "vdj", "--q", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qcrys(&["boson", "--realization", "vdj", "--q", "-2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qcrys(&["boson", "--realization", "xyz", "--q", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn outputs_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        vec![
            "crystal", "--type", "C", "--n", "2", "--lambda", "1", "--cap", "7",
        ],
        vec![
            "rep", "--type", "C", "--n", "2", "--lambda", "1", "--cap", "7", "--which", "deformed",
            "--q", "3/5", "--node", "2",
        ],
        vec!["boson", "--realization", "vdj", "--q", "2", "--cutoff", "4"],
    ] {
        let a = dir.path().join("a");
        let b = dir.path().join("b");
        for out in [&a, &b] {
            let mut full = args.clone();
            full.extend(["--out", out.to_str().unwrap()]);
            qcrys(&full);
        }
        assert_eq!(
            std::fs::read(&a).unwrap(),
            std::fs::read(&b).unwrap(),
            "{args:?}"
        );
        assert!(Path::new(&a).exists());
    }
}
