mod common;

use std::process::{Command, Output};

use ncluster::serial::PolyDump;
use serde_json::Value;

fn ncluster(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncluster"))
        .args(args)
        .env_clear()
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap()
}

#[test]
fn compute_matrix_rows() {
    let o = ncluster(&["compute", "--r", "3", "--n", "5", "--format", "matrix", "--pad", "10"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 365);
    assert!(out.lines().any(|l| l == common::A4_ROW));

    let minimal = stdout(&ncluster(&["compute", "--r", "3", "--n", "5", "--format", "matrix"]));
    assert_eq!(minimal.lines().count(), 365);
    assert!(minimal.lines().any(|l| l == "1*[1 -1 1 1 -1; 1 -1 -2 -1 0]"));
}

#[test]
fn compute_json_round_trips() {
    let o = ncluster(&["compute", "--r", "2", "--n", "4"]);
    assert!(o.status.success());
    let dump = PolyDump::from_json(&stdout(&o)).unwrap();
    assert_eq!((dump.r, dump.n, dump.name.as_str()), (2, 4, "x_3"));
    let x3 = ncluster::formula::compute_x(2, 4, Default::default()).unwrap();
    assert_eq!(dump.to_poly().unwrap(), x3);
}

#[test]
fn output_is_deterministic() {
    let args = ["compute", "--r", "3", "--n", "5", "--format", "words"];
    let a = ncluster(&args);
    let b = ncluster(&args);
    assert_eq!(a.stdout, b.stdout);
    let c = ncluster(&["compute", "--r", "3", "--n", "5", "--format", "words", "--workers", "3"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn validation_errors() {
    let o = ncluster(&["compute", "--r", "1", "--n", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let e = error_json(&o);
    assert_eq!(e["error"]["kind"], "validation");
    assert!(e["error"]["message"].as_str().unwrap().contains("r >= 2"));

    assert_eq!(ncluster(&["compute", "--r", "3", "--n", "3"]).status.code(), Some(2));
    assert_eq!(ncluster(&["compute", "--r", "3", "--n", "5", "--workers", "0"]).status.code(), Some(2));
    assert_eq!(ncluster(&["count", "--r", "3", "--n", "5", "--set", "Tband7"]).status.code(), Some(2));
    let o = ncluster(&["compute", "--r", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"]["kind"], "usage");
}

#[test]
fn resource_cap() {
    let o = ncluster(&["compute", "--r", "3", "--n", "6", "--family-cap", "1000"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(error_json(&o)["error"]["kind"], "resource_cap");
    assert_eq!(ncluster(&["count", "--r", "4", "--n", "7"]).status.code(), Some(3));
}

#[test]
fn environment_overrides() {
    let run = |envs: &[(&str, &str)], args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_ncluster"));
        cmd.env_clear().args(args);
        for (k, v) in envs {
            cmd.env(k, v);
        }
        cmd.output().unwrap()
    };
    let o = run(&[("NCC_R", "3"), ("NCC_N", "5"), ("NCC_SET", "F")], &["count"]);
    assert_eq!(stdout(&o).trim(), "365");
    // flags win over the environment
    let o = run(&[("NCC_R", "2"), ("NCC_N", "5")], &["count", "--r", "3"]);
    assert_eq!(stdout(&o).trim(), "365");
}

#[test]
fn counts() {
    assert_eq!(stdout(&ncluster(&["count", "--r", "3", "--n", "5", "--set", "F"])).trim(), "365");
    assert_eq!(stdout(&ncluster(&["count", "--r", "3", "--n", "5", "--set", "Ftilde"])).trim(), "369");
    let t = stdout(&ncluster(&["count", "--r", "3", "--n", "6", "--set", "Tgeq3"]));
    assert_eq!(t.lines().collect::<Vec<_>>(), ["179587", "band 3: 179506", "band 4: 81"]);
    let j: Value = serde_json::from_str(&stdout(&ncluster(&[
        "count", "--r", "2", "--n", "6", "--set", "Tgeq3", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(j["count"], "0");
    // both readings of green support agree here
    let singles = stdout(&ncluster(&["count", "--r", "3", "--n", "6", "--mode", "singles"]));
    assert_eq!(singles.trim(), "5403014");
}

#[test]
fn enumerate_lists_families() {
    let out = stdout(&ncluster(&["enumerate", "--r", "3", "--n", "4"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[0], "{}");
    assert!(lines.contains(&"{alpha(0,1)}"));
    assert!(lines.contains(&"{a1, a2, a3}"));
}

#[test]
fn verify_and_lemmas() {
    let o = ncluster(&["verify", "--r", "3", "--n", "5"]);
    assert!(o.status.success());
    let rep: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(rep["equal"], true);
    assert_eq!(rep["term_count"], 365);
    assert_eq!(rep["coeff_sum"], "365");

    let dir = tempfile::tempdir().unwrap();
    let cached = ["verify", "--r", "2", "--n", "6", "--cache-dir", dir.path().to_str().unwrap()];
    assert!(ncluster(&cached).status.success());
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    assert!(ncluster(&cached).status.success());

    let o = ncluster(&["lemmas", "--r", "3", "--n", "4", "--format", "words"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("PASS [exact] F(C) = C"));
    assert!(text.contains("PASS [exact] set identities on D_4"));
    assert!(text.contains("PASS [margin-checked] support blocks D_4 -> D_5"));
}

#[test]
fn render_shows_the_path() {
    let out = stdout(&ncluster(&["render", "--r", "3", "--n", "5"]));
    assert!(out.contains("edges: HHVHHVHV"));
    assert!(out.contains("alpha(1,3):green(3,1) edges 4..=8"));
    assert!(out.contains("alpha(2,3):red edges 6..=8"));
}
