use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pretzel"));
    c.env("PRETZEL_BRACKET_CAP", "16");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    // The compiled schema borrows nothing once built; leak the source for 'static.
    let raw: &'static Value = Box::leak(Box::new(raw));
    jsonschema::JSONSchema::compile(raw).expect("schema compiles")
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    if let Err(errors) = schema().validate(&v) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("schema violations: {msgs:?}");
    }
    v
}

#[test]
fn invariants_of_minus_two_three_seven() {
    let v = json_ok(&["invariants", "(-2,3,7)"]);
    let r = &v["results"];
    assert_eq!(r["genus"]["value"], 5);
    assert_eq!(r["crossing_bound"], 12);
    assert_eq!(r["jones"]["methods_agree"], true);
    assert_eq!(r["a2"]["jones"], r["a2"]["conway"]);
    // Lehmer's polynomial.
    assert_eq!(
        r["alexander"]["fox_calculus"],
        serde_json::json!([1, -1, 0, 1, -1, 1, -1, 1, 0, -1, 1])
    );
    assert_eq!(r["alexander"]["methods_agree"], true);
}

#[test]
fn untrusted_genus_branch_reports_a_lower_bound() {
    let v = json_ok(&["invariants", "(4,3,-3,-3)"]);
    assert_eq!(v["results"]["genus"]["value"], 4);
    assert_eq!(v["results"]["genus_lower_bound"], 2);
}

#[test]
fn invariants_of_the_trefoil_pretzel() {
    let v = json_ok(&["invariants", "(1,1,1)"]);
    let r = &v["results"];
    assert_eq!(r["jones"]["methods"]["closed_form"]["t"], "t^-1 + t^-3 - t^-4");
    assert_eq!(r["jones"]["methods"]["state_sum"]["t"], "t^-1 + t^-3 - t^-4");
    assert_eq!(r["a2"]["jones"], 1);
    assert_eq!(r["a2"]["conway"], 1);
}

#[test]
fn bare_parameter_list_is_accepted() {
    let v = json_ok(&["invariants", "-2,3,7"]);
    assert_eq!(v["results"]["params"], serde_json::json!([-2, 3, 7]));
}

#[test]
fn links_report_conway_only() {
    let v = json_ok(&["invariants", "(1,1)"]);
    assert_eq!(v["results"]["case_tag"], "link");
    assert!(v["results"].get("jones").is_none());
    assert!(v["results"]["conway"].is_array());
}

#[test]
fn zero_parameter_is_a_parse_error() {
    let out = run(&["invariants", "(0,3,5)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("connected sum"));
}

#[test]
fn malformed_input_is_a_parse_error() {
    assert_eq!(run(&["check", "(1,x,3)"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn two_even_parameters_are_unsupported() {
    let out = run(&["check", "(4,6,8)"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn check_five_strand_by_tau() {
    let v = json_ok(&["check", "(3,5,7,9,11)"]);
    assert_eq!(v["results"]["verdict"]["kind"], "holds_by_tau");
    assert!(!v["provenance"].as_array().unwrap().is_empty());
}

#[test]
fn check_by_a2_without_census() {
    // 15 crossings, so the census settles it unless disabled.
    let v = json_ok(&["check", "(3,3,3,-3,-3)"]);
    assert_eq!(v["results"]["verdict"]["kind"], "holds_by_citation");
    let v = json_ok(&["--no-census", "check", "(3,3,3,-3,-3)"]);
    assert_eq!(v["results"]["verdict"]["kind"], "holds_by_a2");
    assert_eq!(v["results"]["invariants_used"]["a2"], -4);
}

#[test]
fn slopes() {
    let v = json_ok(&["slopes", "5", "--cap", "10"]);
    assert_eq!(v["results"]["admissible_q"], serde_json::json!([2, 3, 7, 8]));
    let v = json_ok(&["slopes", "13", "--cap", "20"]);
    assert!(v["results"]["admissible_q"].as_array().unwrap().contains(&5.into()));
    let v = json_ok(&["slopes", "7", "--cap", "50"]);
    assert_eq!(v["results"]["admissible_q"], serde_json::json!([]));
}

#[test]
fn sweep_bounds_are_enforced() {
    assert_eq!(run(&["sweep", "--max-abs", "26", "--max-n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["sweep", "--max-abs", "3", "--max-n", "10"]).status.code(), Some(2));
}

fn sweep_csv(dir: &Path, name: &str, extra: &[&str]) -> (Value, PathBuf) {
    let csv = dir.join(name);
    let mut args = vec!["sweep", "--max-abs", "5", "--max-n", "5", "--jobs", "2", "--csv"];
    args.push(csv.to_str().unwrap());
    args.extend_from_slice(extra);
    (json_ok(&args), csv)
}

#[test]
fn sweep_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, ca) = sweep_csv(dir.path(), "a.csv", &[]);
    let (b, cb) = sweep_csv(dir.path(), "b.csv", &[]);
    assert_eq!(a, b);
    let (ta, tb) = (std::fs::read(&ca).unwrap(), std::fs::read(&cb).unwrap());
    assert_eq!(ta, tb);
    let text = String::from_utf8(ta).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("params,n,class,genus,thickness,a2,w3,verdict,citation")
    );
    assert_eq!(lines.count() as u64, a["results"]["knots"].as_u64().unwrap());
    assert_eq!(a["results"]["residual_count"], 0);
    assert!(a["timings"].as_object().unwrap().is_empty());
}

#[test]
fn sweep_cache_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let cache = cache.to_str().unwrap();
    let (first, c1) = sweep_csv(dir.path(), "1.csv", &["--cache", cache]);
    let knots = first["results"]["knots"].as_u64().unwrap();
    assert_eq!(first["results"]["cache"]["appended"], knots);
    assert_eq!(first["results"]["cache"]["hits"], 0);
    let (second, c2) = sweep_csv(dir.path(), "2.csv", &["--cache", cache]);
    assert_eq!(second["results"]["cache"]["hits"], knots);
    assert_eq!(second["results"]["cache"]["appended"], 0);
    assert_eq!(std::fs::read(c1).unwrap(), std::fs::read(c2).unwrap());

    // A different cap is a different fingerprint: nothing is reused.
    let (third, _) = sweep_csv(dir.path(), "3.csv", &["--cache", cache, "--bracket-cap", "12"]);
    assert_eq!(third["results"]["cache"]["hits"], 0);
}

#[test]
fn residual_locus_search() {
    let v = json_ok(&["sweep", "--max-abs", "5", "--max-n", "5", "--only-residual-locus"]);
    let r = &v["results"];
    assert_eq!(r["solutions"], serde_json::json!([]));
    assert_eq!(r["square_identity_mismatches"], 0);
    assert_eq!(r["cube_identity_mismatches"], 0);
}

#[test]
fn timings_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["--timings", "--out", out.to_str().unwrap(), "check", "(-2,3,7)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(v["timings"]["check"].as_f64().unwrap() >= 0.0);
}
