use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weighted-axb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn check_example_one_kernel_condition_fails() {
    let out = run(&["check", &data("ex1.json"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["conditions"]["kernel_condition"], Value::Bool(false));
    assert_eq!(v["conditions"]["range_condition"], Value::Bool(true));
    assert_eq!(v["order_status"], "InfimumUnknown");
}

#[test]
fn check_feasible_instance() {
    let v = json(&run(&["check", &data("feasible.json"), "--json"]));
    assert_eq!(v["conditions"]["kernel_condition"], Value::Bool(true));
    assert_eq!(v["conditions"]["range_condition"], Value::Bool(true));
}

#[test]
fn malformed_input_exits_2() {
    let out = run(&["check", &data("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed JSON"));
    assert_eq!(run(&["solve"]).status.code(), Some(2));
    assert_eq!(
        run(&["check", &data("does-not-exist.json")]).status.code(),
        Some(2)
    );
}

#[test]
fn solve_example_one_frobenius() {
    let out = run(&[
        "solve",
        &data("ex1.json"),
        "--schatten",
        "--p",
        "2",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["direct_value"].as_f64().unwrap() - 1.0).abs() <= 1e-8);
    assert!(v["formula_value"].as_f64().unwrap().abs() <= 1e-10);
    assert_eq!(v["disagreement"], Value::Bool(true));
    let x: Vec<[f64; 2]> = serde_json::from_value(v["minimizer"]["data"].clone()).unwrap();
    assert!(x
        .iter()
        .all(|[re, im]| re.abs() < 1e-12 && im.abs() < 1e-12));
}

#[test]
fn solve_example_three_is_uncharacterised() {
    let out = run(&[
        "solve",
        &data("ex3.json"),
        "--candidate",
        &data("ex3_candidate.json"),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["status"], "NotCharacterized");
    let c = &v["candidate"];
    assert!(c["critical_residual_norm"].as_f64().unwrap() <= 1e-10);
    assert!((c["normal_residual_p2_norm"].as_f64().unwrap() - 8.0_f64.sqrt()).abs() <= 1e-8);
}

#[test]
fn solve_feasible_in_loewner_order() {
    let out = run(&[
        "solve",
        &data("feasible.json"),
        "--order",
        "--emit-manifold",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "MinimumExists");
    assert!(v["normal_residual_norm"].as_f64().unwrap() <= 1e-8);
    assert!(v["manifold"]["left_factor"].is_object());
    assert!(v["inf_value"].is_object());
}

#[test]
fn examples_subcommand() {
    let out = run(&["examples", "ex3", "--a", "2", "--p", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_pass"], Value::Bool(true));
    assert!((v["data"]["normal_residual_p2_norm"].as_f64().unwrap() - 2.828427).abs() < 1e-6);
    assert_eq!(run(&["examples", "ex1"]).status.code(), Some(0));
    assert_eq!(run(&["examples", "ex3", "--p", "2"]).status.code(), Some(0));
    assert_eq!(run(&["examples", "ex3", "--a", "1"]).status.code(), Some(2));
}

#[test]
fn shorted_subcommand() {
    let out = run(&[
        "shorted",
        &data("w2.json"),
        "--subspace",
        &data("e1.json"),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let s: Vec<[f64; 2]> = serde_json::from_value(v["shorted"]["data"].clone()).unwrap();
    let expected = [0.0, 0.0, 0.0, 0.5];
    for (got, want) in s.iter().zip(expected) {
        assert!((got[0] - want).abs() < 1e-12 && got[1].abs() < 1e-12);
    }
    assert_eq!(v["all_pass"], Value::Bool(true));

    let inline = r#"{"rows": 2, "cols": 1, "data": [[1, 0], [0, 0]]}"#;
    let out = run(&["shorted", &data("ex1.json"), "--subspace", inline, "--json"]);
    let v = json(&out);
    let s: Vec<[f64; 2]> = serde_json::from_value(v["shorted"]["data"].clone()).unwrap();
    assert!((s[3][0] - 1.0).abs() < 1e-12 && s[0][0].abs() < 1e-12);
}

#[test]
fn sampling_demo_subcommand() {
    let out = run(&[
        "sampling-demo",
        "--dim",
        "6",
        "--sampling-rank",
        "3",
        "--recon-rank",
        "3",
        "--same-frames",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let errs: Vec<f64> = serde_json::from_value(v["in_range_errors"].clone()).unwrap();
    assert!(errs.iter().all(|&e| e < 1e-10));
    let out = run(&[
        "sampling-demo",
        "--dim",
        "3",
        "--sampling-rank",
        "4",
        "--recon-rank",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_report_carries_a_json_block() {
    let out = run(&["check", &data("ex1.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    let start = text.find('{').expect("JSON block present");
    let v: Value = serde_json::from_str(&text[start..]).unwrap();
    assert_eq!(v["command"], "check");
    assert!(text.starts_with("instance"));
}
