use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn mulquad(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mulquad")).args(args).output().unwrap()
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let out = mulquad(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), v)
}

fn hom(e: i64) -> Value {
    json!({"embedding_index": 0, "frobenius_exp": e})
}

const Z2_Z4: &str = r#"{"schema_version":1,"domain":{"zmod":2},"codomain":{"zmod":4},"form":"table","values":[0,1]}"#;

#[test]
fn verify_z2_to_z4() {
    let (code, v) = run_json(&["verify", "--input", Z2_Z4]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["ok"], true);
    assert_eq!(v["form_zero"], false);
    assert_eq!(v["form_nonzero_at"], json!({"a": 1, "b": 1, "value": 2}));
}

#[test]
fn verify_reports_violation_with_witness() {
    let (code, v) = run_json(&[
        "verify",
        "--input",
        r#"{"domain":"F3","codomain":"F3","form":"table","values":[[0],[1],[2]]}"#,
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["ok"], false);
    assert_eq!(v["report"]["witnesses"][0]["check"], "integer_squares");
}

#[test]
fn enumerate_f4() {
    let (code, v) = run_json(&["enumerate", "--K", "F4", "--L", "F4"]);
    assert_eq!(code, 0);
    let maps = v["maps"].as_array().unwrap();
    let mut exps: Vec<u64> = maps.iter().map(|m| m["exponent"].as_u64().unwrap()).collect();
    exps.sort();
    assert_eq!(exps, vec![1, 2, 3]);
    let cube = maps.iter().find(|m| m["exponent"] == 3).unwrap();
    assert_eq!(cube["decomposition"]["kind"], "split2");
    assert_eq!(cube["decomposition"]["phi2"]["frobenius_exp"], 1);
}

#[test]
fn enumerated_maps_round_trip_into_classify() {
    let (_, v) = run_json(&["enumerate", "--K", "F9", "--L", "F9"]);
    for m in v["maps"].as_array().unwrap() {
        let doc = m["map"].to_string();
        let (code, c) = run_json(&["classify", "--input", &doc]);
        assert_eq!(code, 0);
        assert_eq!(c["decomposition"], m["decomposition"]);
    }
}

#[test]
fn thm14_on_x6() {
    let input = json!({"K": "F4", "L": "F4", "sigma": [hom(1), hom(1), hom(1)], "tau": [hom(2), hom(0), hom(0)]});
    let (code, v) = run_json(&["thm14", "--input", &input.to_string()]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"]["tag"], "case2");
    let ls: Vec<i64> = v["verdict"]["payload"]["tau_twists"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["l"].as_i64().unwrap())
        .collect();
    assert_eq!(ls, vec![1, -1, -1]);
}

#[test]
fn decompose_checks_a_supplied_decomposition() {
    let map = json!({"domain": "F4", "codomain": "F4", "form": "table", "values": [[0,0],[1,0],[1,0],[1,0]]});
    let (code, v) = run_json(&["decompose", "--input", &map.to_string()]);
    assert_eq!(code, 0);
    assert_eq!(v["branch"], "comp_norm");
    let mut given = map.clone();
    let mut d = v.clone();
    d["phi2"]["frobenius_exp"] = json!(0);
    given["decomposition"] = d;
    let (code, v) = run_json(&["decompose", "--input", &given.to_string()]);
    assert_eq!(code, 1);
    assert_eq!(v["report"]["witnesses"][0]["check"], "product_of_homs");
}

#[test]
fn artin_and_symsum() {
    let doc = json!({"K": "F4", "L": "F4", "homs": [hom(0), hom(1)]});
    let (code, v) = run_json(&["artin", "--input", &doc.to_string()]);
    assert_eq!((code, v["independent"].clone()), (0, json!(true)));
    let doc = json!({"K": "F4", "L": "F4", "homs": [hom(0), hom(0)]});
    let (code, v) = run_json(&["artin", "--input", &doc.to_string()]);
    assert_eq!(code, 0);
    assert_eq!(v["coefficients"], json!([[1, 0], [1, 0]]));
    let (code, v) = run_json(&["symsum", "--input", &doc.to_string()]);
    assert_eq!(code, 0);
    assert_eq!((v["vanishes"].clone(), v["structural"].clone()), (json!(true), json!(true)));
    let doc = json!({"K": "F4", "L": "F4", "homs": [hom(0), hom(1)], "xs": [[1, 0], [0, 1]]});
    let (code, v) = run_json(&["symsum", "--input", &doc.to_string()]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], json!([1, 0]));
    assert_eq!(v["polarization_sign_holds"], true);
}

#[test]
fn scan_reports_no_inconsistencies() {
    let (code, v) = run_json(&["scan", "--K", "F4", "--L", "F4"]);
    assert_eq!(code, 0);
    assert_eq!(v["scan"]["inconsistencies"], json!([]));
}

#[test]
fn input_and_capacity_errors_exit_2() {
    let (code, v) = run_json(&["verify", "--input", "{\"domain\": 3}"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "invalid_input");
    let (code, v) = run_json(&["enumerate", "--K", "F4096", "--L", "F2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "too_large");
    let (code, v) = run_json(&["verify", "--input", "/nonexistent/map.json"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "io");
    let seven: Vec<Value> = (0..7).map(|_| hom(0)).collect();
    let doc = json!({"K": "F4", "L": "F4", "homs": seven});
    let (code, v) = run_json(&["symsum", "--input", &doc.to_string()]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "too_many_factors");
}

#[test]
fn stdin_and_output_file() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mulquad"))
        .args(["verify", "--input", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(Z2_Z4.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let path = std::env::temp_dir().join(format!("mulquad-cli-test-{}.json", std::process::id()));
    let out2 = mulquad(&["verify", "--input", Z2_Z4, "--output", path.to_str().unwrap()]);
    assert_eq!(out2.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn identical_runs_are_byte_identical() {
    for args in [
        vec!["enumerate", "--K", "F16", "--L", "F16"],
        vec!["verify", "--input", Z2_Z4, "--exhaustive-bound", "4", "--seed", "3", "--samples", "500"],
    ] {
        let a = mulquad(&args);
        let b = mulquad(&args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn sampled_checks_are_labelled() {
    let (code, v) = run_json(&["verify", "--input", Z2_Z4, "--exhaustive-bound", "4", "--samples", "50"]);
    assert_eq!(code, 0);
    let modes: Vec<&str> = v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["mode"].as_str().unwrap())
        .collect();
    assert!(modes.contains(&"sampled"));
}

#[test]
fn text_format() {
    let out = mulquad(&["classify", "--input", r#"{"domain":"F9","codomain":"F9","form":"table","values":[0,1,1,1,1,1,1,1,1]}"#, "--format", "text"]);
    let s = String::from_utf8(out.stdout).unwrap();
    // x^8 on F_9 is not quadratic: it fails the axioms
    assert_eq!(out.status.code(), Some(1), "{s}");
    assert!(s.starts_with("classify: violated"));
}
