use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn specs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn spec(name: &str) -> String {
    specs().join(name).to_string_lossy().into_owned()
}

fn gmk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmk"))
        .args(args)
        .env_remove("GMK_MAX_DIM")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_epsilon_spec_passes() {
    let out = gmk(&["verify", "--spec", &spec("epsilon3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["result"], "pass");
    assert_eq!(report["fine"], true);
    assert_eq!(report["components"].as_array().unwrap().len(), 9);

    let text = gmk(&["verify", "--spec", &spec("epsilon3.json"), "--format", "text"]);
    assert_eq!(String::from_utf8_lossy(&text.stdout), "pass\n");
}

#[test]
fn verify_reports_a_broken_grading() {
    let out = gmk(&["verify", "--spec", &spec("explicit-broken.json")]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["result"], "fail");
    assert!(report["violation_count"].as_u64().unwrap() > 0);
}

#[test]
fn inequivalent_tuples_exit_with_one() {
    let out = gmk(&["equiv", "--group", "2", "--tau", "[0,1]", "--tau-prime", "[0,0]"]);
    assert_eq!(out.status.code(), Some(1));
    let verdict = json(&out);
    assert_eq!(verdict["equivalent"], false);
    assert!(verdict["shift"].is_null());
    assert!(verdict.get("beta").is_none());
}

#[test]
fn certificates_re_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let out = gmk(&["equiv", "--group", "2x2", "--tau", "[[0,0],[1,0],[1,0]]", "--tau-prime", "[[0,1],[1,1],[0,1]]"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&cert, &out.stdout).unwrap();
    let check = gmk(&["verify", "--spec", cert.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0), "{}", String::from_utf8_lossy(&check.stdout));

    let mut tampered = json(&out);
    tampered["beta"]["map"] = serde_json::json!([0, 1, 2]);
    std::fs::write(&cert, tampered.to_string()).unwrap();
    let check = gmk(&["verify", "--spec", cert.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(1));
    assert_eq!(json(&check)["checks"]["graded_isomorphism"], false);

    let embed = gmk(&["embed", "--spec", &spec("embed-block.json")]);
    assert_eq!(embed.status.code(), Some(0));
    assert_eq!(json(&embed)["accepted"], true);
    std::fs::write(&cert, &embed.stdout).unwrap();
    assert_eq!(gmk(&["verify", "--spec", cert.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn rejected_block_embedding_names_the_violation() {
    let out = gmk(&["embed", "--spec", &spec("embed-rejected.json")]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["reason"], "block condition");
    assert_eq!(report["violation"]["block"], 2);
}

#[test]
fn finitary_signatures_are_compared() {
    let tau = r#"{"signature":[{"element":0,"count":"omega"},{"element":1,"count":2}]}"#;
    let tau_prime = r#"{"signature":[{"element":1,"count":"omega"},{"element":0,"count":2}]}"#;
    let out = gmk(&["equiv", "--group", "[2]", "--tau", tau, "--tau-prime", tau_prime]);
    assert_eq!(out.status.code(), Some(0));
    let verdict = json(&out);
    assert_eq!(verdict["shift"], serde_json::json!([1]));
    assert_eq!(verdict["beta"]["kind"], "pairing");
}

#[test]
fn demo_emits_two_diagrams_and_a_report() {
    let out = gmk(&["demo-remark1", "--depth", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches("digraph").count(), 2);
    let report: Value = serde_json::from_str(&text[text.rfind("}\n{").unwrap() + 2..]).unwrap();
    assert_eq!(report["diagrams_equal"], false);
    assert_eq!(report["steinitz_equal"], true);

    let json_out = json(&gmk(&["demo-remark1", "--depth", "4", "--format", "json"]));
    assert_eq!(json_out["double"]["signature"], json_out["twist"]["signature"]);
    assert_eq!(json_out["first_difference_level"], 2);
}

#[test]
fn bratteli_dot_has_one_rank_per_level() {
    let out = gmk(&["bratteli", "--spec", &spec("chain-double.json"), "--depth", "3", "--format", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let dot = String::from_utf8_lossy(&out.stdout);
    assert_eq!(dot.matches("rank=same").count(), 3);
    assert!(dot.contains("[label=\"2\"]"));

    let report = json(&gmk(&["bratteli", "--spec", &spec("chain-corner.json"), "--depth", "3"]));
    assert_eq!(report["corner"], true);
    assert_eq!(report["bookkeeping"], true);
}

#[test]
fn regularization_sample_passes() {
    let out = gmk(&["regularize", "--spec", &spec("regularize.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["result"], "pass");
    assert_eq!(report["checks"]["corner_equality"], true);
    assert_eq!(report["c_tilde"]["dimension"], 4);
}

#[test]
fn cocycle_of_the_epsilon_grading() {
    let out = gmk(&["cocycle", "--spec", &spec("epsilon3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["values"].as_array().unwrap().len(), 81);
    assert_eq!(report["identity_violations"], 0);
    let elementary = gmk(&["cocycle", "--spec", &spec("elementary.json")]);
    assert_eq!(elementary.status.code(), Some(2));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"kind\": \"epsilon\",\n \"n\": }").unwrap();
    let out = gmk(&["verify", "--spec", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2, column 7"), "{}", stderr(&out));

    let mismatch = dir.path().join("mismatch.json");
    std::fs::write(
        &mismatch,
        r#"{"kind":"tensor","group":[2],"left":{"kind":"elementary","tuple":[0]},"right":{"kind":"elementary","group":[3],"tuple":[0]}}"#,
    )
    .unwrap();
    let out = gmk(&["verify", "--spec", mismatch.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("right.group"), "{}", stderr(&out));

    let out = gmk(&["equiv", "--group", "2", "--tau", "[0,[1,1]]", "--tau-prime", "[0]"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("tau[1]"), "{}", stderr(&out));

    assert_eq!(gmk(&["verify", "--spec", "/does/not/exist.json"]).status.code(), Some(2));
    assert_eq!(gmk(&["bratteli", "--spec", &spec("chain-double.json"), "--format", "text"]).status.code(), Some(2));
    assert_eq!(gmk(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn dimension_cap_is_read_from_the_environment() {
    let run = |cap: &str| {
        Command::new(env!("CARGO_BIN_EXE_gmk"))
            .args(["verify", "--spec", &spec("epsilon3.json")])
            .env("GMK_MAX_DIM", cap)
            .output()
            .unwrap()
    };
    assert_eq!(run("2").status.code(), Some(2));
    assert_eq!(run("3").status.code(), Some(0));
    assert_eq!(run("zero").status.code(), Some(2));
    let deep = gmk(&["demo-remark1", "--depth", "8"]);
    assert_eq!(deep.status.code(), Some(2));
    assert!(stderr(&deep).contains("64"));
}

#[test]
fn library_entry_point_matches_the_binary() {
    let args = ["gmk", "equiv", "--group", "3", "--tau", "[0,1,1]", "--tau-prime", "[2,0,2]"];
    let outcome = gmk_cli::run(args);
    let out = gmk(&args[1..]);
    assert_eq!(outcome.stdout.as_bytes(), out.stdout.as_slice());
    assert_eq!(Some(outcome.status.code()), out.status.code());
}
