//! End-to-end tests of the installed binary: goldens for each verb, the
//! exit-code contract, and byte stability of the JSON output.

use std::process::Command;

use gralg::presentation::{preset_algebra, PresetName, SignPolicy};
use gralg::FieldTag;

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_gralg"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().expect("exit code"),
    )
}

fn json(stdout: &str) -> serde_json::Value {
    serde_json::from_str(stdout).expect("valid JSON output")
}

#[test]
fn nf_reports_the_straightening_golden() {
    let (stdout, _, code) = run(&["nf", "x1*t"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["normal_form"], "w1 + t*x1");
    assert_eq!(v["field"], "F2");
}

#[test]
fn dims_match_the_frozen_prefix_and_are_byte_stable() {
    let (first, _, code) = run(&["dims", "--max-degree", "8"]);
    assert_eq!(code, 0);
    let v = json(&first);
    assert_eq!(
        v["dims"],
        serde_json::json!([1, 3, 6, 11, 17, 25, 37, 54, 79])
    );
    let (second, _, _) = run(&["dims", "--max-degree", "8"]);
    assert_eq!(first, second, "output must be byte-stable");
}

#[test]
fn oracle_route_agrees_with_the_rewrite_route() {
    let (rw, _, _) = run(&["dims", "--max-degree", "4"]);
    let (or, _, code) = run(&["dims", "--max-degree", "4", "--oracle"]);
    assert_eq!(code, 0);
    assert_eq!(json(&rw)["dims"], json(&or)["dims"]);
    assert_eq!(json(&or)["route"], "oracle");
}

#[test]
fn basis_lists_the_degree_two_words_in_order() {
    let (stdout, _, code) = run(&["basis", "2"]);
    assert_eq!(code, 0);
    assert_eq!(
        json(&stdout)["words"],
        serde_json::json!(["w1", "t*x1", "t*y1", "x1*y1", "x2", "y2"])
    );
}

#[test]
fn pair_evaluates_duals() {
    let (stdout, _, code) = run(&["pair", "dual(w1)", "x1*t + t*x1"]);
    assert_eq!(code, 0);
    assert_eq!(json(&stdout)["value"], "1");
}

#[test]
fn cup_table_output_is_the_dual_combination() {
    let (stdout, _, code) = run(&["cup", "dual(x1)", "dual(x1)", "--format", "table"]);
    assert_eq!(code, 0);
    assert_eq!(stdout, "dual(x2)\n");
}

#[test]
fn coproduct_reports_the_mixed_terms() {
    let (stdout, _, code) = run(&["coproduct", "x2"]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 3);
    assert!(terms
        .iter()
        .any(|t| t["left"] == "x1" && t["right"] == "x1"));
}

#[test]
fn series_evaluates_expressions() {
    let (stdout, _, code) = run(&[
        "series",
        "james(q^2 + q^3 + q^4)",
        "--max-degree",
        "8",
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        json(&stdout)["coeffs"],
        serde_json::json!([1, 0, 1, 1, 2, 2, 4, 5, 8])
    );
}

#[test]
fn verify_suite_passes_and_reports_every_check() {
    let (stdout, _, code) = run(&[
        "verify",
        "--max-degree",
        "10",
        "--oracle-max-degree",
        "3",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0);
    let v = json(&stdout);
    assert_eq!(v["ok"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 26);
}

#[test]
fn usage_errors_exit_with_two() {
    let (_, _, code) = run(&["frobnicate"]);
    assert_eq!(code, 2, "unknown verb");
    let (_, stderr, code) = run(&["dims", "--preset", "nope"]);
    assert_eq!(code, 2, "unknown preset");
    assert!(stderr.contains("nope"));
    let (_, _, code) = run(&["nf", "x1 *"]);
    assert_eq!(code, 2, "bad expression");
    let (_, _, code) = run(&["nf", "--field", "F6", "t"]);
    assert_eq!(code, 2, "composite characteristic");
}

#[test]
fn cup_refuses_an_inconsistent_coproduct() {
    // Strict centrality over the rationals does not descend to the tensor
    // square; the gate must fail closed.
    let (stdout, stderr, code) = run(&["cup", "dual(t)", "dual(x3)", "--field", "Q"]);
    assert_eq!(code, 1);
    assert_eq!(stdout, "");
    assert!(stderr.contains("not well-defined"));
    assert!(stderr.contains("koszul"));
}

#[test]
fn presentation_files_unlock_signed_cup_products() {
    let p = preset_algebra(PresetName::GLambda, FieldTag::Rationals)
        .unwrap()
        .with_sign_policy(SignPolicy::Koszul);
    let path = std::env::temp_dir().join(format!("gralg-koszul-{}.json", std::process::id()));
    std::fs::write(&path, p.to_json()).unwrap();
    let path_str = path.to_str().unwrap();

    let (stdout, stderr, code) = run(&[
        "cup",
        "dual(t)",
        "dual(x3)",
        "--field",
        "Q",
        "--presentation",
        path_str,
    ]);
    assert_eq!(code, 0, "stderr: {stderr}");
    let v = json(&stdout);
    // The commutator class is not hit: w3 never appears in the result.
    let words: Vec<&str> = v["coords"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["word"].as_str().unwrap())
        .collect();
    assert!(!words.contains(&"w3"));

    // Declared field and flag must agree.
    let (_, _, code) = run(&["nf", "t*t", "--presentation", path_str]);
    assert_eq!(code, 2, "field mismatch");

    std::fs::remove_file(&path).ok();
}
