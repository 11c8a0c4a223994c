use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const K3: &str = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";

fn orthodim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orthodim")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn path_str(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

#[test]
fn decide_triangle() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.gr", K3);
    let out = orthodim(&["decide", "--field", "gf2", "--d", "3", &k3]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("YES"));
    let rep: serde_json::Value = serde_json::from_str(lines.next().unwrap()).unwrap();
    assert_eq!(rep["vectors"].as_array().unwrap().len(), 3);

    let out = orthodim(&["decide", "--field", "gf3", "--d", "2", &k3]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "NO");
}

#[test]
fn decide_writes_witness_and_etr() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.gr", K3);
    let (w, e) = (path_str(&dir, "w.json"), path_str(&dir, "k3.etr"));
    let out = orthodim(&["decide", "--d", "3", "--out", &w, "--etr", &e, &k3]);
    assert_eq!(stdout(&out), "YES\n");
    assert!(fs::read_to_string(&w).unwrap().contains("\"field\":\"gf2\""));
    assert!(fs::read_to_string(&e).unwrap().starts_with("ETR vars=9 d=3"));
}

#[test]
fn cover_decider_uses_modulator() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c5.gr", "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5\nx 1\nx 2\nx 4\n");
    let out = orthodim(&["decide", "--fpt", "--d", "2", "--field", "gf3", &f]);
    assert_eq!(stdout(&out).trim(), "NO");
    let out = orthodim(&["decide", "--fpt", "--d", "3", "--field", "gf3", &f]);
    assert!(stdout(&out).starts_with("YES"));
}

#[test]
fn kernelize_real_within_bound() {
    let dir = TempDir::new().unwrap();
    let g = path_str(&dir, "in.gr");
    assert!(orthodim(&["gen", "--n", "10", "--k", "4", "--seed", "5", "--out", &g]).status.success());
    let ker = path_str(&dir, "ker.gr");
    let out = orthodim(&["kernelize", "--alg", "real", "--d", "3", "--k-check", "--out", &ker, &g]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["within_bound"], true);
    assert_eq!(report["algorithm"], "real");
    assert_eq!(report["k"], 4);
    assert!(fs::read_to_string(&ker).unwrap().contains("x 4\n"));
}

#[test]
fn kernelize_needs_a_modulator() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.gr", K3);
    assert_eq!(orthodim(&["kernelize", "--d", "3", &k3]).status.code(), Some(2));
    let out = orthodim(&["kernelize", "--d", "3", "--auto-cover", &k3]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"k\":2"));
}

#[test]
fn verify_suite_counts() {
    let out = orthodim(&["verify", "--suite", "kernel-general", "--trials", "200", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "200/200 equivalent");
    for suite in ["kernel-real", "kernel-hereditary", "fpt", "reduction", "certificates"] {
        let out = orthodim(&["verify", "--suite", suite, "--trials", "20", "--seed", "2", "--field", "gf3"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
        assert!(stdout(&out).starts_with("20/20 "), "{suite}");
    }
}

#[test]
fn reduce_writes_graph_and_sidecar() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "p4.gr", "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\nx 2\nx 3\n");
    let red = path_str(&dir, "red.gr");
    let out = orthodim(&["reduce", "--d", "3", "--out", &red, &g]);
    assert_eq!(out.status.code(), Some(0));
    let side: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    // k + d + d k (2d - 2)
    assert_eq!(side["modulator"].as_array().unwrap().len(), 2 + 3 + 3 * 2 * 4);
    assert_eq!(side["z"], serde_json::json!([5, 6, 7]));
    let text = fs::read_to_string(&red).unwrap();
    assert!(text.starts_with("p edge 31 "));

    let decided = orthodim(&["decide", "--field", "gf3", &red]);
    assert!(stdout(&decided).starts_with("YES"));
}

#[test]
fn certify_triangle_in_the_plane() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tri.gr", "p edge 3 3\nd 2\nf gf2\ne 1 2\ne 1 3\ne 2 3\n");
    let sub = path_str(&dir, "sub.gr");
    let out = orthodim(&["certify", "--out", &sub, &f]);
    assert_eq!(out.status.code(), Some(0));
    let w: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(w["vertices"], serde_json::json!([1, 2, 3]));
    assert_eq!(w["verified"], true);
    assert!(Path::new(&sub).exists());

    let yes = write(&dir, "yes.gr", "p edge 2 1\nd 2\nf gf3\ne 1 2\n");
    assert_eq!(orthodim(&["certify", &yes]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic() {
    let a = orthodim(&["gen", "--n", "8", "--k", "3", "--seed", "7"]);
    let b = orthodim(&["gen", "--n", "8", "--k", "3", "--seed", "7"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().filter(|l| l.starts_with("x ")).count(), 3);
    assert_eq!(orthodim(&["gen", "--n", "2", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let g = path_str(&dir, "in.gr");
    orthodim(&["gen", "--n", "10", "--k", "4", "--seed", "1", "--out", &g]);
    assert_eq!(orthodim(&["--budget", "3", "decide", "--d", "3", &g]).status.code(), Some(3));
    assert_eq!(orthodim(&["frobnicate"]).status.code(), Some(2));
    let bad = write(&dir, "bad.gr", "p edge 2 1\ne 1 1\n");
    let out = orthodim(&["decide", "--d", "2", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(orthodim(&["decide", "--d", "2", "--field", "rational", &bad]).status.code(), Some(2));
}
