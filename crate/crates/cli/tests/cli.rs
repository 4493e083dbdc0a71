use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacobian-rigidity")).args(args).output().unwrap()
}

#[track_caller]
fn json(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "jacobian-rigidity/1");
    v
}

#[test]
fn classify_odd_eleven() {
    let v = json(&["classify", "x*(x^10 - x - 1)"], 0);
    assert_eq!(v["conclusion"], "END_Z");
    assert_eq!(v["applied_rules"][0]["id"], "R2");
    assert_eq!(v["corollaries"].as_array().unwrap().len(), 5);
}

#[test]
fn classify_rejects_low_degree() {
    let out = run(&["classify", "x^2 - 1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("below 5"));
}

#[test]
fn syntax_errors_carry_a_column() {
    let out = run(&["classify", "x^-1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 3"));
}

#[test]
fn torsion_check() {
    let v = json(&["torsion-check", "--letters", "10"], 0);
    assert_eq!(v["submodule_dims"], serde_json::json!([0, 1, 9, 10]));
    assert_eq!(v["centralizer_dim"], 2);
    assert_eq!(v["heart_restriction_iso"], true);
    assert_eq!(run(&["torsion-check", "--letters", "7"]).status.code(), Some(1));
}

#[test]
fn galois_outcomes() {
    let v = json(&["certify-galois", "x^10 - x - 1"], 0);
    assert_eq!(v["outcome"]["status"], "CERTIFIED");
    assert_eq!(v["outcome"]["conclusion"], "SYMMETRIC");
    assert_eq!(v["replayed"], true);
    let v = json(&["certify-galois", "(x^2 + 1)*(x^3 + 2)", "--budget", "50"], 2);
    assert_eq!(v["outcome"]["status"], "INCONCLUSIVE");
    assert_eq!(v["outcome"]["transitive"], false);
}

#[test]
fn same_seed_same_bytes() {
    for args in [
        ["classify", "x*(x - 1)*(x^10 - x - 1)", "--seed", "17"],
        ["certify-galois", "x^9 + 3*x + 1", "--seed", "17"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn transform_round_trips_through_the_parser() {
    let v = json(&["transform", "(x - 1)*(x^5 - x - 1)", "--root", "1"], 0);
    assert_eq!(v["h2"], "-x^5 + 4*x^4 + 10*x^3 + 10*x^2 + 5*x + 1");
    assert_eq!(v["identity_verified"], true);
    let h2 = v["h2"].as_str().unwrap();
    let again = json(&["transform", &format!("(x - 2)*({h2})"), "--root", "2"], 0);
    assert_eq!(again["genus"], 2);
    assert_eq!(run(&["transform", "x^6 - x - 1", "--root", "1"]).status.code(), Some(1));
}

#[test]
fn two_rational_roots() {
    let v = json(&["transform", "x*(x - 1)*(x^8 - x - 1)", "--root", "0", "--second-root", "1"], 0);
    assert_eq!(v["second_root_image"], "1");
    assert_eq!(v["v"], "x^8 + x^7 - 1");
}

#[test]
fn non_isogeny() {
    let split = (0..=10).map(|k| format!("(x - {k})")).collect::<Vec<_>>().join("*");
    let v = json(&["non-isogenous", "x*(x^10 - x - 1)", &split], 0);
    assert_eq!(v["result"], "TRUE");
    let v = json(&["non-isogenous", "x*(x^10 - x - 1)", "x*(x^10 - x - 1)"], 2);
    assert_eq!(v["result"], "INCONCLUSIVE");
}

#[test]
fn isomorphism_by_translation() {
    let v = json(&["iso", "x^6 - x - 1", "(x + 1)^6 - (x + 1) - 1"], 0);
    assert_eq!(v["isomorphic"], true);
    let v = json(&["iso", "x^6 - x - 1", "x^6 - x - 2"], 0);
    assert_eq!(v["isomorphic"], false);
}

#[test]
fn text_output() {
    let out = run(&["classify", "(x - 1)*(x^5 - x - 1)", "--text"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.contains("conclusion: END_Z"));
    assert!(s.contains("rule R1"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
