use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectral-zeta")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn cubic_plus_two_closed_form() {
    let out = bin(&["zeta", "--M", "1.5", "--branch", "plus", "--n", "2", "--method", "closed-form"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema_version"], 1);
    let z = &v["values"][0];
    assert_eq!(z["order"], 2);
    assert_eq!(z["method"], "closed-form");
    let got = z["value"].as_f64().unwrap();
    // 8(√5−1)π⁴/(5^{17/5}Γ⁴(4/5)Γ²(3/5))
    assert!((got - 0.99352218068577687).abs() < 1e-13, "{got}");
}

#[test]
fn empty_spectrum_request() {
    let out = bin(&["eig", "--M", "2", "--lambda", "0.5", "--alpha", "0", "--count", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["levels"].as_array().unwrap().len(), 0);
    assert_eq!(v["problem"]["kind"], "radial");
}

#[test]
fn radial_suite_through_third_order() {
    let out = bin(&["verify", "radial", "--sigma", "0.3", "--lambda", "0.4", "--orders", "1,2,3", "--source", "closed-form"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["all_pass"], true);
    let ids: Vec<&str> = v["reports"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["radial-1", "radial-2", "radial-3"]);
    assert_eq!(v["reports"][2]["provenance"], "mixed");
}

#[test]
fn json_is_byte_stable() {
    let args = ["eig", "--M", "2", "--lambda", "0.5", "--count", "6"];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    // first odd level of the full-line quartic oscillator
    assert!(text.contains("\"re\": 3.79967302980"), "{text}");
}

#[test]
fn csv_projection() {
    let out = bin(&["eig", "--M", "2", "--count", "3", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "k,re,im,err");
    assert_eq!(lines.len(), 4);
}

#[test]
fn exit_codes() {
    let bad = bin(&["eig", "--M", "1"]);
    assert_eq!(bad.status.code(), Some(2));
    let diag: Value = serde_json::from_slice(&bad.stderr).unwrap();
    assert_eq!(diag["error"]["kind"], "configuration");
    assert_eq!(bin(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(bin(&["eig", "--M", "2", "--lambda", "1.75"]).status.code(), Some(2));
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
    // at these energies the next order of the expansion bends the slope away from 2
    let failing = bin(&["verify", "qw", "--orders", "1", "--energies", "0.2,0.3"]);
    assert_eq!(failing.status.code(), Some(1));
    assert_eq!(json(&failing)["all_pass"], false);
}

#[test]
fn config_file_and_override() {
    let dir = std::env::temp_dir().join(format!("sz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("alpha.json");
    std::fs::write(&cfg, r#"{"command":"verify","suite":"alpha","sigma":[0.3],"lambda":0.4,"alpha":[0.3]}"#).unwrap();
    let out_path = dir.join("out.json");
    let out = bin(&["--config", cfg.to_str().unwrap(), "--lambda", "0.2", "--output", out_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["reports"].as_array().unwrap().len(), 1);
    assert_eq!(v["reports"][0]["params"]["lambda"].as_f64(), Some(0.2));
}
