use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_binoculars"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_explore_check_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = bin(&["gen", "--spec", "chordal:n=40,rate=0.5,seed=3,ports=random:1", "--out", "g.json"], d);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));

    let o = bin(
        &["explore", "--graph", "g.json", "--root", "7", "--budget-factor", "50", "--trace", "t.jsonl", "--map", "m.json"],
        d,
    );
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("status Halted"));
    let trace = fs::read_to_string(d.join("t.jsonl")).unwrap();
    assert!(trace.starts_with(r#"{"format":"binoculars-trace","version":1,"root":7"#));
    let map: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("m.json")).unwrap()).unwrap();
    assert_eq!(map["homebase"], 0);
    assert_eq!(map["n"], 40);

    let o = bin(&["check", "--trace", "t.jsonl", "--graph", "g.json", "--map", "m.json"], d);
    assert!(o.status.success(), "{}", stdout(&o));
    for name in ["phase_invariants", "final_isomorphism", "coverage", "covering"] {
        assert!(stdout(&o).contains(&format!("ok   {name}")), "{}", stdout(&o));
    }
}

#[test]
fn check_fails_against_the_wrong_graph() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(bin(&["gen", "--spec", "path:6", "--out", "p.json"], d).status.success());
    assert!(bin(&["gen", "--spec", "cycle:6", "--out", "c.json"], d).status.success());
    let o = bin(&["explore", "--graph", "p.json", "--trace", "t.jsonl"], d);
    assert!(o.status.success());
    let o = bin(&["check", "--trace", "t.jsonl", "--graph", "c.json"], d);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn cycles_fail_unless_non_halting_is_expected() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(bin(&["gen", "--spec", "cycle:5", "--out", "c.json"], d).status.success());
    let o = bin(&["explore", "--graph", "c.json", "--budget-factor", "10"], d);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("BudgetExhausted"));
    let o = bin(&["explore", "--graph", "c.json", "--expect", "no-halt"], d);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn suite_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(
        d.join("cfg.json"),
        r#"{"generators": ["johnson:5,2", "complete:6"], "port_schemes": ["random:1", "random:2"],
            "roots": {"sample": {"k": 2, "seed": 3}}, "checks": {"cluster_tree": true}}"#,
    )
    .unwrap();
    let o = bin(&["suite", "--config", "cfg.json", "--out", "out"], d);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("8 runs, 0 failed"));
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("out/report.json")).unwrap()).unwrap();
    assert_eq!(report["reports"].as_array().unwrap().len(), 8);
    assert_eq!(report["reports"][0]["status"], "halted");
    assert!(fs::read_to_string(d.join("out/summary.txt")).unwrap().contains("johnson"));
}

#[test]
fn bad_inputs_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let o = bin(&["gen", "--spec", "moebius:4", "--out", "x.json"], d);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown graph family"));

    fs::write(d.join("bad.json"), "{\"n\": 3,\n \"edges\": [\n  [0, 1, 0, 0],\n  [1, 2, 0, 1]\n ]}\n").unwrap();
    let o = bin(&["explore", "--graph", "bad.json"], d);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 4: edge #1"), "{err}");
}
