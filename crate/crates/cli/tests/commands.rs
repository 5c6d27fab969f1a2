use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn pbcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbcode"))
        .args(args)
        .output()
        .unwrap()
}

fn run_json(args: &[&str]) -> (Value, i32) {
    let out = pbcode(args);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (doc, out.status.code().unwrap())
}

fn with_instance<'a>(cmd: &'a str, file: &'a Path, rest: &[&'a str]) -> Vec<&'a str> {
    let mut args = vec![cmd, "--instance", file.to_str().unwrap()];
    args.extend_from_slice(rest);
    args
}

#[test]
fn example_counts() {
    let ex = fixture("ex37.json");
    let (doc, code) = run_json(&with_instance("distribution", &ex, &["--r", "3"]));
    assert_eq!(code, 0);
    assert_eq!(doc, serde_json::json!({"r": 3, "count": "35384"}));
    let (doc, _) = run_json(&with_instance(
        "distribution",
        &ex,
        &["--r", "14", "--method", "general"],
    ));
    assert_eq!(doc["count"], "22829377536");
}

#[test]
fn full_distribution_document() {
    let (doc, code) = run_json(&with_instance(
        "distribution",
        &fixture("lee5_chain.json"),
        &[],
    ));
    assert_eq!(code, 0);
    assert_eq!(
        doc["counts"],
        serde_json::json!(["1", "2", "2", "10", "10"])
    );
    assert_eq!(doc["total"], "25");
    let (doc, _) = run_json(&with_instance(
        "distribution",
        &fixture("lee5_chain.json"),
        &["--method", "chain"],
    ));
    assert_eq!(doc["method"], "chain");
}

#[test]
fn weight_dist_ball() {
    let ex = fixture("ex37.json");
    let (doc, _) = run_json(&with_instance(
        "weight",
        &ex,
        &["--vector", "[5,1,0,3,6,0,0,0,0,2,1,0,0]"],
    ));
    assert_eq!(doc["weight"], "8");
    let tiny = fixture("tiny.json");
    let (doc, _) = run_json(&with_instance(
        "dist",
        &tiny,
        &["--x", "[1,0]", "--y", "[0,1]"],
    ));
    assert_eq!(doc["distance"], "2");
    let (doc, code) = run_json(&with_instance("ball", &tiny, &["--radius", "0"]));
    assert_eq!((doc["size"].clone(), code), (Value::from("1"), 0));
    let (doc, _) = run_json(&with_instance("ball", &tiny, &["--radius", "2"]));
    assert_eq!(doc["size"], "9");
}

#[test]
fn verify_tiny() {
    let (doc, code) = run_json(&with_instance(
        "verify",
        &fixture("tiny.json"),
        &["--seed", "7", "--trials", "5"],
    ));
    assert_eq!(code, 0);
    assert_eq!(doc["ok"], true);
    assert_eq!(doc["levels"].as_array().unwrap().len(), 3);
    assert_eq!(doc["balls"].as_array().unwrap().len(), 5);
}

#[test]
fn analyze_repetition_code() {
    let (doc, code) = run_json(&with_instance("analyze-code", &fixture("tiny.json"), &[]));
    assert_eq!(code, 0);
    assert_eq!(doc["distances"]["pwpi"], "2");
    assert_eq!(doc["is_mds"], true);
    assert_eq!(doc["mds_interval"]["lower"], "2");
    assert_eq!(doc["chain"]["packing_radius"]["formula"], "1");
    assert_eq!(doc["chain"]["packing_radius"]["brute"], "1");
}

#[test]
fn analyze_reports_block_gap_without_failing() {
    let (doc, code) = run_json(&with_instance(
        "analyze-code",
        &fixture("z7_block_span.json"),
        &[],
    ));
    assert_eq!(code, 0);
    let rel = &doc["chain"]["min_distance_relation"];
    assert_eq!(
        (rel["d_pwpi"].as_str(), rel["rhs"].as_str()),
        (Some("2"), Some("1"))
    );
    assert_eq!(rel["agree"], false);
    assert_eq!(rel["asserted"], false);
}

#[test]
fn non_chain_has_no_chain_block() {
    let (doc, code) = run_json(&with_instance(
        "analyze-code",
        &fixture("mixed_blocks.json"),
        &[],
    ));
    assert_eq!(code, 0);
    assert!(doc.get("chain").is_none());
    assert_eq!(doc["distances"]["pw"], Value::Null);
}

#[test]
fn exit_codes() {
    let ex = fixture("ex37.json");
    let (doc, code) = run_json(&with_instance("verify", &ex, &[]));
    assert_eq!(code, 2);
    assert_eq!(doc["error"]["kind"], "capacity");
    assert_eq!(run_json(&with_instance("analyze-code", &ex, &[])).1, 1);
    assert_eq!(
        run_json(&with_instance("weight", &ex, &["--vector", "[1,2]"])).1,
        1
    );
    assert_eq!(
        run_json(&with_instance("distribution", &ex, &["--r", "16"])).1,
        1
    );
    assert_eq!(
        run_json(&with_instance("distribution", &ex, &["--method", "chain"])).1,
        1
    );
    assert_eq!(pbcode(&["distribution"]).status.code(), Some(1));
    assert_eq!(pbcode(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(pbcode(&["--help"]).status.code(), Some(0));
    let missing = fixture("missing.json");
    assert_eq!(
        run_json(&with_instance("ball", &missing, &["--radius", "0"])).1,
        1
    );
}

#[test]
fn bad_documents_are_validation_errors() {
    let dir = std::env::temp_dir().join(format!("pbcode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{\n  \"m\": 3,\n  \"pi\": [1,\n}").unwrap();
    let (doc, code) = run_json(&with_instance("ball", &broken, &["--radius", "0"]));
    assert_eq!(code, 1);
    let msg = doc["error"]["message"].as_str().unwrap();
    assert!(msg.contains("line 4"), "{msg}");
    let mismatch = dir.join("mismatch.json");
    std::fs::write(
        &mismatch,
        r#"{"m": 3, "weight": {"kind": "lee"}, "poset": {"n": 2}, "pi": [1]}"#,
    )
    .unwrap();
    let (doc, code) = run_json(&with_instance("ball", &mismatch, &["--radius", "0"]));
    assert_eq!(code, 1);
    assert!(doc["error"]["message"]
        .as_str()
        .unwrap()
        .contains("pi has 1 entries"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    let mixed = fixture("mixed_blocks.json");
    let args = with_instance("analyze-code", &mixed, &[]);
    assert_eq!(pbcode(&args).stdout, pbcode(&args).stdout);
    let lee = fixture("lee5_chain.json");
    let args = with_instance("verify", &lee, &["--seed", "3"]);
    assert_eq!(pbcode(&args).stdout, pbcode(&args).stdout);
}
