//! The `tracemin` binary: output formats and exit codes.

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tracemin")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), v)
}

#[test]
fn psi_reports_exact_value_and_key() {
    let (code, v) = json(&["psi", "--n", "1000000", "--m", "3597262"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "psi");
    assert_eq!(v["parameters"]["n"], 1_000_000);
    let r = &v["results"]["psi"];
    assert_eq!(r["classification"], "triple_four_row");
    assert_eq!(r["key"]["ones"], 3_597_262);
    assert_eq!(r["key"]["inner"], 3_597_260);
    assert_eq!(r["triple"]["k"], 299_772);
    assert_eq!(r["triple"]["sign"], -1);
    assert!(v["meta"]["wall_time_ms"].is_number());
    assert!(v["version"].is_string());
}

#[test]
fn psi_bounds_for_the_improvement_example() {
    let (code, v) = json(&["psi", "--n", "7", "--m", "26"]);
    assert_eq!(code, 0);
    let status = &v["results"]["psi"]["status"];
    assert_eq!(status["kind"], "bounds");
    assert_eq!(status["upper"].as_f64().unwrap(), 5.91136802356266);
    assert_eq!(v["results"]["psi"]["key"]["inner"], 20);
}

#[test]
fn psi_csv_has_fixed_columns() {
    let out = run(&["--format", "csv", "psi", "--n", "2", "--m", "3", "--oracle"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "n,m,status,value,lower,upper,classification,witness,key_ones,key_inner,triple_k,triple_sign,oracle_psi,oracle_agrees"
    );
    assert_eq!(
        lines.next().unwrap(),
        "2,3,exact,2.23606797749979,2.23606797749979,2.23606797749979,prime_two_row,\"1,1,1,2\",3,1,,,2.23606797749979,true"
    );
}

#[test]
fn spectrum_of_matrix_file() {
    let dir = std::env::temp_dir().join(format!("tracemin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ones2x2.txt");
    std::fs::write(&path, "11\n11\n").unwrap();
    let (code, v) = json(&["spectrum", "--matrix", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let sv = v["results"]["numeric"]["singular_values"].as_array().unwrap();
    assert_eq!(sv[0].as_f64().unwrap(), 2.0);
    assert!(sv[1].as_f64().unwrap().abs() < 1e-12);

    std::fs::write(&path, "12\n").unwrap();
    assert_eq!(run(&["spectrum", "--matrix", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn spectrum_of_shape_matches() {
    let (code, v) = json(&["spectrum", "--shape", "1,5,1,5"]);
    assert_eq!(code, 0);
    assert!(v["results"]["max_deviation"].as_f64().unwrap() < 1e-9);
    assert_eq!(v["results"]["closed_form"]["trace_norm"].as_f64().unwrap(), 5.91136802356266);
}

#[test]
fn triple_search_output() {
    let (code, v) = json(&["search-triples", "--k-min", "299770", "--k-max", "299775", "--sign", "-1"]);
    assert_eq!(code, 0);
    let ks: Vec<u64> = v["results"]["witnesses"].as_array().unwrap().iter().map(|w| w["k"].as_u64().unwrap()).collect();
    assert!(ks.contains(&299_772));
    assert_eq!(run(&["search-triples", "--k-min", "5", "--k-max", "1", "--sign", "+1"]).status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["psi", "--n", "2", "--m", "5"]).status.code(), Some(2));
    assert_eq!(run(&["psi", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["--threads", "0", "psi", "--n", "2", "--m", "2"]).status.code(), Some(2));
    assert_eq!(run(&["brute-force", "--n", "5", "--m", "12"]).status.code(), Some(3));
    assert_eq!(run(&["spectrum", "--shape", "1,200,1,200"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "--suite", "claimA", "--m-max", "20000"]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_reports_known_counterexamples() {
    // The four-row bound is beaten by (1, 3, 1, n) at m = 3n + 1 = 12k - 2.
    let (code, v) = json(&["verify", "--suite", "theorem3", "--n-max", "20"]);
    assert_eq!(code, 1);
    let suite = &v["results"][0];
    assert_eq!(suite["failed"], 2);
    let labels: Vec<&str> = suite["notable"].as_array().unwrap().iter().map(|c| c["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["n=7 m=22", "n=19 m=58"]);
}

#[test]
fn brute_force_payload_is_thread_independent() {
    let payload = |threads: &str| {
        let (code, mut v) = json(&["--threads", threads, "brute-force", "--n", "4", "--m", "10"]);
        assert_eq!(code, 0);
        assert_eq!(v["meta"]["threads"].as_u64().unwrap().to_string(), threads);
        v.as_object_mut().unwrap().remove("meta");
        v.to_string()
    };
    assert_eq!(payload("1"), payload("3"));
}
