use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn k3pf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_k3pf")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn sorted_vertices(v: &Value) -> Vec<Vec<i64>> {
    let mut vs: Vec<Vec<i64>> = serde_json::from_value(v["vertices"].clone()).unwrap();
    vs.sort();
    vs
}

#[test]
fn octahedron_dual_is_the_cube() {
    let out = k3pf(&["polytope", "dual", &data("octahedron.json")]);
    assert_eq!(out.status.code(), Some(0));
    let cube: Value = serde_json::from_str(&std::fs::read_to_string(data("cube_family.json")).unwrap()).unwrap();
    assert_eq!(sorted_vertices(&json(&out)), sorted_vertices(&cube["polytope"]));
}

#[test]
fn automorphism_orders() {
    let out = k3pf(&["polytope", "autos", &data("octahedron.json")]);
    assert_eq!(json(&out)["order"], 24);
    let out = k3pf(&["polytope", "autos", "--all", &data("octahedron.json")]);
    assert_eq!(json(&out)["order"], 48);
}

#[test]
fn edge_octahedron_operator_and_round_trip() {
    let fam = data("edge_octahedron_family.json");
    let out = k3pf(&["pf", "compute", "--family", &fam, "--max-order", "4", "--use-symmetry"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 3);
    assert_eq!(
        v["cleared"],
        serde_json::json!(["t", "7*t^2-64", "6*t^3-192*t", "t^4-64*t^2"])
    );
    assert_eq!(v["oracle"]["annihilates"], true);

    let dir = std::env::temp_dir().join(format!("k3pf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let op = dir.join("op.json");
    std::fs::write(&op, &out.stdout).unwrap();
    let check = k3pf(&["pf", "verify", "--operator", op.to_str().unwrap(), "--family", &fam, "--n", "20"]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["annihilates"], true);
}

#[test]
fn output_is_byte_stable() {
    let fam = data("cube_family.json");
    let a = k3pf(&["pf", "compute", "--family", &fam, "--use-symmetry"]);
    let b = k3pf(&["pf", "compute", "--family", &fam, "--use-symmetry"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_k3pf"))
        .args(["pf", "compute", "--family", &fam, "--use-symmetry"])
        .env("K3PF_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn trace_lists_witnesses() {
    let fam = data("edge_octahedron_family.json");
    let v = json(&k3pf(&["pf", "compute", "--family", &fam, "--use-symmetry", "--trace"]));
    let w = v["witnesses"].as_array().unwrap();
    assert!(!w.is_empty());
    assert_eq!(w[0]["witness"]["cofactors"].as_array().unwrap().len(), 18);
}

#[test]
fn domain_errors_exit_one() {
    let out = k3pf(&["pf", "compute", "--family", &data("index_four_family.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "NotReflexive");

    let out = k3pf(&[
        "pf",
        "verify",
        "--operator",
        &data("wrong_operator.json"),
        "--family",
        &data("edge_octahedron_family.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "OracleRejected");

    let out = k3pf(&["ode", "normalform", "--a2", "0", "--a1", "1", "--a0", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"], "DegenerateLeading");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(k3pf(&["polytope", "frobnicate"]).status.code(), Some(2));
    assert_eq!(k3pf(&["polytope", "dual", "/nonexistent/p.json"]).status.code(), Some(2));
    let fam = data("edge_octahedron_family.json");
    assert_eq!(k3pf(&["pf", "compute", "--family", &fam, "--max-order", "0"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_k3pf"))
        .args(["polytope", "info", &data("octahedron.json")])
        .env("K3PF_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn symmetric_square_round_trip() {
    let out = k3pf(&["ode", "symsquare", "--a2", "t*(t^2-64)", "--a1", "2*t^2-64", "--a0", "t/4"]);
    let v = json(&out);
    assert_eq!(v["cleared"][3], "t^4-64*t^2");
    let dir = std::env::temp_dir().join(format!("k3pf-sq-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let op = dir.join("sq.json");
    std::fs::write(&op, &out.stdout).unwrap();
    let root = json(&k3pf(&["ode", "symroot", "--operator", op.to_str().unwrap()]));
    assert_eq!(root["a2"], "4*t^3-256*t");
    assert_eq!(root["a1"], "8*t^2-256");
    assert_eq!(root["a0"], "t");
}

#[test]
fn normal_form_and_series() {
    let v = json(&k3pf(&["ode", "normalform", "--a2", "t*(t^2-64)", "--a1", "2*t^2-64", "--a0", "t/4"]));
    assert_eq!(v["q"], "(t^4+64*t^2+4096)/(4*t^6-512*t^4+16384*t^2)");
    let v = json(&k3pf(&["period", "series", "--family", &data("edge_octahedron_family.json"), "--n", "5"]));
    assert_eq!(v["constant_terms"], serde_json::json!(["1", "0", "8", "0", "216"]));
}

#[test]
fn family_summary() {
    let v = json(&k3pf(&["family", "build", &data("cube_family.json")]));
    assert_eq!(v["group_order"], 24);
    assert_eq!(v["rank_bound"], 19);
    assert_eq!(v["invariance"]["invariant"], true);
    assert_eq!(v["grading"]["rays"].as_array().unwrap().len(), 26);
}
