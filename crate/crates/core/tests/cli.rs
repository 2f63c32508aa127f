use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hopfkernel::group::{bundled_path, GroupInstance, DEFAULT_SEED};
use hopfkernel::instance::{load_pair, InstanceFile};
use hopfkernel::Tolerance;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopfkernel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn shipped(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data/instances").join(name)
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hopfkernel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn finding<'a>(report: &'a Value, section: &str, key: &str) -> &'a Value {
    report["sections"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == section)
        .and_then(|s| s["findings"].as_array().unwrap().iter().find(|f| f["key"] == key))
        .map(|f| &f["value"])
        .unwrap_or_else(|| panic!("no {section}/{key}"))
}

#[test]
fn validate_shipped_instances() {
    for name in ["kC2.json", "kS3.json", "kS3.dual.json"] {
        let out = run(&["validate", shipped(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
    }
}

#[test]
fn shipped_instances_match_a_fresh_build() {
    let tol = Tolerance::default();
    for (group, file, dual) in [("C2", "kC2.json", false), ("S3", "kS3.json", false), ("S3", "kS3.dual.json", true)] {
        let gi = GroupInstance::load(bundled_path(group), DEFAULT_SEED, tol).unwrap();
        let fresh = if dual { gi.pair.dualize() } else { gi.pair };
        let a = InstanceFile::from_pair(&load_pair(shipped(file), tol).unwrap());
        let b = InstanceFile::from_pair(&fresh);
        assert_eq!((&a.name, &a.irr_h, &a.irr_hstar), (&b.name, &b.irr_h, &b.irr_hstar));
        assert_eq!((&a.fusion_h, &a.fusion_hstar), (&b.fusion_h, &b.fusion_hstar));
        for (ra, rb) in a.eval.iter().zip(&b.eval) {
            for (x, y) in ra.iter().zip(rb) {
                assert!((x[0] - y[0]).abs() < 1e-9 && (x[1] - y[1]).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn kernels_json() {
    let out = run(&["--json", "kernels", shipped("kS3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["instance"], "kS3");
    assert_eq!(report["command"], "kernels");
    assert_eq!(report["status"], "pass");
    let sgn = report["sections"][1]["name"].as_str().unwrap().to_string();
    assert_eq!(finding(&report, &sgn, "ker subdim"), 3);
    assert_eq!(finding(&report, &sgn, "ker"), &serde_json::json!(["e", "(012)", "(021)"]));
}

#[test]
fn normal_subset() {
    let pair = shipped("kS3.json");
    let out = run(&["--json", "normal", pair.to_str().unwrap(), "--subset", "(01)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(finding(&json(&out), "normality", "normal"), false);
    let out = run(&["--json", "normal", pair.to_str().unwrap(), "--subset", "(012)"]);
    assert_eq!(finding(&json(&out), "normality", "normal"), true);
}

#[test]
fn cosets_dims() {
    let pair = shipped("kS3.json");
    let out = run(&["--json", "cosets", pair.to_str().unwrap(), "--k", "(01)", "--l", "(01)"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(finding(&json(&out), "classes", "class dims"), &serde_json::json!([2, 4]));
}

#[test]
fn output_is_deterministic() {
    let group = bundled_path("A4");
    let a = run(&["--json", "oracle-compare", group.to_str().unwrap()]);
    let b = run(&["--json", "oracle-compare", group.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn build_group_round_trip() {
    let path = tmp("kD4.dual.json");
    let out = run(&["build-group", bundled_path("D4").to_str().unwrap(), "--dual", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let pair = load_pair(&path, Tolerance::default()).unwrap();
    assert_eq!(pair.name(), "k^D4");
    assert_eq!(pair.ring_hstar().len(), 5);
    assert_eq!(run(&["lattice", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn failing_axiom_exits_one() {
    let mut doc = InstanceFile::from_pair(&load_pair(shipped("kS3.json"), Tolerance::default()).unwrap());
    doc.fusion_h.iter_mut().find(|q| q[..3] == [2, 2, 2]).unwrap()[3] = 2;
    let path = tmp("bad.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    let out = run(&["--json", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["status"], "fail");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degree homomorphism"));
    assert!(text.contains("(2a,2a)"));
}

#[test]
fn wrong_partition_hint_exits_one() {
    let mut doc = InstanceFile::from_pair(&load_pair(shipped("kS3.json"), Tolerance::default()).unwrap());
    doc.partition_hint = Some(vec![vec![0], vec![1, 2, 3, 4, 5]]);
    let path = tmp("hint.json");
    std::fs::write(&path, doc.to_json()).unwrap();
    assert_eq!(run(&["partition", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["validate", "/nonexistent/instance.json"]).status.code(), Some(2));
    let path = tmp("garbage.json");
    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(run(&["kernels", path.to_str().unwrap()]).status.code(), Some(2));
    let pair = shipped("kS3.json");
    assert_eq!(
        run(&["normal", pair.to_str().unwrap(), "--subset", "nosuchlabel"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
