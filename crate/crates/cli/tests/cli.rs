use std::process::{Command, Output};

use serde_json::Value;

const ODDS: &str = "ep(P=0;pre=;Q=2;off=1)";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geoindep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn err_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    assert!(out.stdout.is_empty());
    let v = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    (out.status.code().unwrap(), v)
}

#[test]
fn threshold_digits() {
    let out = run(&["threshold", "--m", "1", "--digits", "10"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"m\":1,\"t\":\"0.7071067811\"}\n"
    );
}

#[test]
fn golden_ratio_pair() {
    let v = ok_json(&[
        "indep",
        "--set",
        "fin(1,4,6)",
        "--set",
        ODDS,
        "--minpoly",
        "poly(-1,0,1,0,1)",
    ]);
    assert_eq!(v["independent"], true);
    assert_eq!(v["conditions"].as_array().unwrap().len(), 1);
    let v = ok_json(&["indep", "--set", "fin(1,4,6)", "--set", ODDS, "--symbolic"]);
    assert_eq!(v["independent"], false);
}

#[test]
fn symbolic_measure() {
    let out = run(&["measure", "--set", ODDS, "--symbolic"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "{\"den\":\"poly(1,1)\",\"num\":\"poly(1)\"}\n"
    );
    let v = ok_json(&["measure", "--set", ODDS, "--r", "1/3"]);
    assert_eq!(v["value"], "3/4");
    let v = ok_json(&[
        "measure",
        "--set",
        ODDS,
        "--numeric",
        "0.5",
        "--tol",
        "1e-9",
    ]);
    assert!((v["value"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-9);
}

#[test]
fn independence_modes() {
    let v = ok_json(&["indep", "--set", "fin(1,2)", "--set", ODDS, "--r", "1/2"]);
    assert_eq!(v["independent"], true);
    assert_eq!(v["conditions"][0]["lhs"], "1/2");
    assert_eq!(v["mode"], "at_rational(1/2)");
    let v = ok_json(&[
        "indep",
        "--set",
        "ep(P=0;pre=;Q=2;off=1)",
        "--set",
        "ep(P=0;pre=;Q=4;off=1,2)",
        "--set",
        "ep(P=0;pre=;Q=8;off=1,2,3,4)",
        "--symbolic",
    ]);
    assert_eq!(v["independent"], true);
    assert_eq!(v["conditions"].as_array().unwrap().len(), 4);
    let v = ok_json(&[
        "indep",
        "--set",
        "fin(1,2)",
        "--set",
        "ep(P=0;pre=;Q=4;off=1)",
        "--given",
        "ep(P=0;pre=;Q=4;off=1,2)",
    ]);
    assert_eq!(v["independent"], true);
}

#[test]
fn constructions() {
    let v = ok_json(&["construct", "pair", "--n", "2", "--T", "fin(1,3)"]);
    assert_eq!(v["A"], "fin(1,2,3,4)");
    assert_eq!(v["independent"], true);
    let v = ok_json(&[
        "construct",
        "triple",
        "--n",
        "5",
        "--b",
        "2",
        "--T",
        "fin(1)",
    ]);
    assert_eq!(v["A2"], ODDS);
    assert_eq!(v["A1"], "fin(1,2,5,6)");
    assert_eq!(v["independent"], true);
    let v = ok_json(&["construct", "remark1"]);
    assert_eq!(v["independent_mod_minpoly"], true);
    assert_eq!(v["independent_symbolic"], false);
    let v = ok_json(&["construct", "remark2", "--n", "3"]);
    assert_eq!(v["A"], "fin(1,2,3)");
    assert_eq!(v["independent"], true);
    let v = ok_json(&["construct", "sequence", "--params", "2,2,2"]);
    assert_eq!(v["sets"][2], "ep(P=0;pre=;Q=8;off=1,2,3,4)");
    assert_eq!(v["independent"], true);
    let v = ok_json(&["construct", "lower", "--n", "2", "--S", ODDS]);
    assert_eq!(v["set"], "ep(P=0;pre=;Q=4;off=1,2)");
    let v = ok_json(&["construct", "lift", "--n", "3", "--S", "fin(1,2)"]);
    assert_eq!(v["set"], "fin(1,2,5,6)");
}

#[test]
fn searches() {
    let v = ok_json(&[
        "search", "converse", "--n", "2", "--r", "1/2", "--max", "10",
    ]);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert_eq!(v["threshold"]["certified_below"], true);
    let v = ok_json(&["search", "enum", "--set", ODDS, "--r", "1/2", "--max", "4"]);
    assert_eq!(v["count"], 6);
    let v = ok_json(&[
        "search", "bound", "--set", "fin(2)", "--n", "2", "--r", "1/2",
    ]);
    assert_eq!(v["lhs"], "1/4");
    assert_eq!(v["rhs"], "1/3");
    assert_eq!(v["holds"], true);
}

#[test]
fn finite_space() {
    let v = ok_json(&["finite-space", "--n", "4", "--s", "2"]);
    assert_eq!(v["passed"], true);
    assert!((v["q"].as_f64().unwrap() - 0.5187).abs() < 1e-4);
}

#[test]
fn errors_and_exit_codes() {
    let (code, v) = err_json(&["measure", "--set", "fin(3,1)", "--symbolic"]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("position 6"));
    let (code, v) = err_json(&["search", "converse", "--n", "2", "--r", "3/4", "--max", "6"]);
    assert_eq!(code, 1);
    assert!(v["error"].as_str().unwrap().contains("t_1"));
    let (code, _) = err_json(&[
        "construct",
        "triple",
        "--n",
        "4",
        "--b",
        "2",
        "--T",
        "fin(1)",
    ]);
    assert_eq!(code, 1);
    let (code, _) = err_json(&["finite-space", "--n", "6", "--s", "4"]);
    assert_eq!(code, 1);
    let (code, _) = err_json(&["measure", "--set", ODDS, "--symbolic", "--bogus"]);
    assert_eq!(code, 1);
    let (code, _) = err_json(&["measure", "--set", ODDS, "--symbolic", "--r", "1/2"]);
    assert_eq!(code, 1);
    let (code, _) = err_json(&["indep", "--set", ODDS, "--symbolic"]);
    assert_eq!(code, 1);
    let (code, _) = err_json(&["frobnicate"]);
    assert_eq!(code, 1);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "search",
        "enum",
        "--set",
        "ep(P=0;pre=;Q=4;off=1,2)",
        "--r",
        "1/2",
        "--max",
        "12",
    ];
    let a = run(&args).stdout;
    let b = run(&args).stdout;
    assert_eq!(a, b);
}

#[test]
fn help_lists_flags() {
    let out = run(&["indep", "--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for flag in ["--set", "--symbolic", "--r", "--minpoly"] {
        assert!(text.contains(flag), "{flag} missing from help");
    }
}
