mod common;

use std::process::{Command, Output};

use common::*;
use rph::exactnum::{format_decimal, parse_rational};
use rph::json::NumberFormat;
use serde_json::{json, Value};

const EXAMPLE_A: &str = "[[10,0,0,0],[-22,14,16,12],[7,-19,-26,-2]]";

fn rph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rph")).args(args).output().unwrap()
}

fn json_of(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn example_job(extra: &str) -> String {
    format!(r#"{{"A": {EXAMPLE_A}, "beta": -10{extra}}}"#)
}

fn fixture_job() -> String {
    let sigma = [3, -1, 2, 4, -2, 1, 5, -3, 2];
    let r = combination(&example_basis(), &sigma).rebase(&example_den()).unwrap();
    let fmt = NumberFormat::Exact;
    json!({
        "A": serde_json::from_str::<Value>(EXAMPLE_A).unwrap(),
        "numerator": fmt.vec3poly(&r.fraction_numerator()),
        "denominator": fmt.denominator(r.denominator()),
    })
    .to_string()
}

#[test]
fn basis_kinds() {
    let job = example_job("");
    let r = json_of(&rph(&["basis", "--inline", &job, "--kind", "R", "--m", "-5", "--M", "5"]));
    assert_eq!(r["dimension"], json!(7));
    let p = json_of(&rph(&["basis", "--inline", &job, "--kind", "P", "--M", "5"]));
    assert_eq!(p["dimension"], json!(4));
    let q = json_of(&rph(&["poly-basis", "--inline", &job, "--M", "5"]));
    assert_eq!(q, p);
}

#[test]
fn output_is_deterministic_and_file_backed() {
    let job = example_job(r#", "kind": "X", "m": -6, "M": 4"#);
    let one = rph(&["basis", "--inline", &job]);
    let two = rph(&["basis", "--inline", &job]);
    assert_eq!(one.stdout, two.stdout);
    let dir = std::env::temp_dir().join(format!("rph-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("job.json");
    let output = dir.join("out.json");
    std::fs::write(&input, &job).unwrap();
    let out = rph(&["basis", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&output).unwrap(), one.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn decimal_mode_rounds_exact_values() {
    let job = example_job(r#", "kind": "Q", "m": -5, "M": -1"#);
    let exact = json_of(&rph(&["basis", "--inline", &job, "--exact"]));
    let decimal = json_of(&rph(&["basis", "--inline", &job, "--digits", "4"]));
    let e = &exact["elements"][0]["numerator"];
    let d = &decimal["elements"][0]["numerator"];
    for (ev, dv) in e.as_array().unwrap().iter().zip(d.as_array().unwrap()) {
        for k in 0..3 {
            let r = parse_rational(ev[k].as_str().unwrap()).unwrap();
            assert_eq!(dv[k].as_str().unwrap(), format_decimal(&r, 4));
        }
    }
}

#[test]
fn m0_tables() {
    let t = json_of(&rph(&["m0", "--inline", &example_job(""), "--m", "-7", "--M", "3"]));
    assert_eq!(t["M0"]["-5"], json!(-1));
    assert_eq!(t["generic"], json!(true));
    let t = json_of(&rph(&["m0", "--inline", &example_job(""), "--m", "10", "--M", "10"]));
    assert_eq!(t["M0"]["10"], json!(14));
}

#[test]
fn decompose_echoes_sigma() {
    let out = json_of(&rph(&["decompose", "--inline", &fixture_job()]));
    assert_eq!(out["sigma"], json!(["3", "-1", "2", "4", "-2", "1", "5", "-3", "2"]));
    assert_eq!(out["verification"]["reconstruction_residual"], json!("0"));
    assert_eq!(out["verification"]["certificates"], json!(true));
    assert_eq!(out["components"].as_array().unwrap().len(), 3);
}

#[test]
fn pfd_real_merge() {
    let out = json_of(&rph(&["pfd", "--inline", &fixture_job(), "--real-merge"]));
    let dens: Vec<&str> =
        out["fractions"].as_array().unwrap().iter().map(|f| f["denominator"].as_str().unwrap()).collect();
    assert_eq!(dens, ["(t+1)^4", "(t^2+1)^3"]);
    assert_eq!(out["verification"]["reconstruction_residual"], json!("0"));
    let split = json_of(&rph(&["pfd", "--inline", &fixture_job()]));
    assert_eq!(split["fractions"].as_array().unwrap().len(), 3);
}

#[test]
fn polynomial_input_has_empty_fraction_list() {
    let job = format!(
        r#"{{"A": {EXAMPLE_A}, "numerator": [[0,0,0],[100,0,0],[-220,120,-160],[140,-40,520],[10,-270,-470],[-54,192,88]]}}"#
    );
    let out = json_of(&rph(&["pfd", "--inline", &job]));
    assert_eq!(out["fractions"], json!([]));
}

#[test]
fn sampling() {
    let job = r#"{"F": [[1,0,0]], "numerator": [[1,2,3]], "t": [0, 1], "count": 3}"#;
    let out = rph(&["sample", "--inline", job]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "t,x,y,z\n0,1,2,3\n1/2,1,2,3\n1,1,2,3\n");
    let pole = r#"{"F": [[1,0,0]], "numerator": [[-2,0,0]], "denominator": [{"root": 1, "mult": 1}], "t": [0, 2], "count": 3}"#;
    let out = rph(&["sample", "--inline", pole]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "t,x,y,z\n0,2,0,0\n2,-2,0,0\n");
    assert!(String::from_utf8(out.stderr).unwrap().contains("t = 1"));
    let p5 = format!(
        r#"{{"A": {EXAMPLE_A}, "numerator": [[0,0,0],[100,0,0],[-220,120,-160],[140,-40,520],[10,-270,-470],[-54,192,88]], "t": [1, 1], "count": 1}}"#
    );
    let out = rph(&["sample", "--inline", &p5, "--digits", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "t,x,y,z\n1.00,-24.00,2.00,-22.00\n");
    let empty = rph(&["sample", "--inline", job, "--count", "0"]);
    assert_eq!(empty.status.code(), Some(3));
}

#[test]
fn check_reports() {
    let out = json_of(&rph(&["check", "--inline", &example_job("")]));
    assert_eq!(out["primitive"], json!(true));
    assert_eq!(out["determinant_identity"], json!(true));
    assert_eq!(out["genericity"][0]["generic"], json!(true));
    let common = r#"{"F": [[1,2,3],[1,2,3]]}"#;
    assert_eq!(json_of(&rph(&["check", "--inline", common]))["primitive"], json!(false));
    let mut job: Value = serde_json::from_str(&fixture_job()).unwrap();
    job["numerator"][3][0] = json!("12345");
    let out = json_of(&rph(&["check", "--inline", &job.to_string()]));
    assert_eq!(out["certificate"]["ok"], json!(false));
    assert_ne!(out["certificate"]["residual"], json!("0"));
    let good = json_of(&rph(&["check", "--inline", &fixture_job()]));
    assert_eq!(good["certificate"]["ok"], json!(true));
    assert_eq!(good["degree_bound"]["ok"], json!(true));
}

#[test]
fn exit_codes() {
    assert_eq!(rph(&["m0", "--inline", "[1"]).status.code(), Some(2));
    assert_eq!(rph(&["m0", "--input", "/nonexistent/job.json"]).status.code(), Some(2));
    assert_eq!(rph(&["basis", "--inline", &example_job(r#", "kind": "W", "m": 0, "M": 1"#)]).status.code(), Some(2));
    assert_eq!(rph(&["m0", "--inline", &example_job(""), "--m", "3", "--M", "1"]).status.code(), Some(3));
    let vanishing = r#"{"F": [[0,0,0],[1,0,0]], "beta": 0, "kind": "Q", "m": -4, "M": 4}"#;
    let out = rph(&["basis", "--inline", vanishing]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stderr).unwrap().contains("F(beta) = 0"));
    let degenerate = example_job(r#", "kind": "Q", "m": -1, "M": 9"#);
    assert_eq!(rph(&["basis", "--inline", &degenerate]).status.code(), Some(0));
    let mut job: Value = serde_json::from_str(&fixture_job()).unwrap();
    job["numerator"][3][0] = json!("12345");
    let out = rph(&["decompose", "--inline", &job.to_string()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8(out.stderr).unwrap().contains("residual"));
}
