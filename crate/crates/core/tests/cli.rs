use std::path::Path;
use std::process::{Command, Output};

use qsc::cli::{ReportDocument, Summary};
use qsc::theorem_suite::{registry, Status};

fn qsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsc")).args(args).output().expect("qsc runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn document(out: &Output) -> ReportDocument {
    serde_json::from_slice(&out.stdout).expect("JSON report document")
}

#[test]
fn coeff_overpartitions_as_csv() {
    let out = qsc(&["coeff", "--fn", "op", "--k", "3", "--limit", "7", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "n,value\n0,1\n1,6\n2,24\n3,80\n4,234\n5,624\n6,1552\n7,3648\n");
}

#[test]
fn coeff_limit_zero_is_a_single_row() {
    let out = qsc(&["coeff", "--fn", "op", "--k", "3", "--limit", "0", "--format", "csv"]);
    assert_eq!(stdout(&out), "n,value\n0,1\n");
}

#[test]
fn coeff_sums_of_three_squares() {
    let out = qsc(&["coeff", "--fn", "rk", "--k", "3", "--limit", "2", "--format", "csv"]);
    assert_eq!(stdout(&out), "n,value\n0,1\n1,6\n2,12\n");
}

#[test]
fn coeff_big_values_are_plain_decimals() {
    let out = qsc(&["coeff", "--fn", "op", "--k", "3", "--limit", "300", "--format", "csv"]);
    let text = stdout(&out);
    let last = text.lines().last().unwrap();
    let value = last.strip_prefix("300,").unwrap();
    assert!(value.len() > 20 && value.bytes().all(|b| b.is_ascii_digit()), "{last}");
}

#[test]
fn coeff_modular_and_json() {
    let out = qsc(&["coeff", "--fn", "op", "--k", "3", "--limit", "14", "--modulus", "64", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["modulus"], 64);
    assert_eq!(v["values"][14], "32");
    assert_eq!(v["values"][7], "0");
}

#[test]
fn coeff_writes_to_an_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let out = qsc(&["coeff", "--fn", "rk", "--k", "4", "--limit", "3", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "n,value\n0,1\n1,8\n2,24\n3,32\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["coeff", "--fn", "op", "--k", "0", "--limit", "3"][..],
        &["coeff", "--fn", "xx", "--k", "3", "--limit", "3"],
        &["coeff", "--fn", "op", "--k", "3", "--limit", "-1"],
        &["coeff", "--fn", "op", "--k", "3", "--limit", "3", "--format", "xml"],
        &["coeff", "--fn", "op", "--k", "3", "--limit", "3", "--modulus", "1"],
        &["verify", "--profile", "huge"],
        &["verify", "--filter", "T2.9", "--all"],
        &["frobnicate"],
        &[],
    ] {
        let out = qsc(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn unknown_filter_exits_2_before_computing() {
    let out = qsc(&["verify", "--filter", "NOSUCH", "--profile", "deep"]);
    assert_eq!(code(&out), 2);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOSUCH"));
}

#[test]
fn budget_rejections_exit_3() {
    let out = qsc(&["coeff", "--fn", "op", "--k", "3", "--limit", "50001"]);
    assert_eq!(code(&out), 3);
    let out = qsc(&["coeff", "--fn", "op", "--k", "3", "--limit", "2000001", "--modulus", "7"]);
    assert_eq!(code(&out), 3);
    let out = qsc(&["verify", "--filter", "T2.9", "--trunc", "2000001"]);
    assert_eq!(code(&out), 3);
    assert!(out.stdout.is_empty());
}

#[test]
fn skipped_checks_exit_3() {
    // 7·13³ does not fit a table of order 1000.
    let out = qsc(&["verify", "--filter", "T4.4", "--trunc", "1000", "--format", "json"]);
    assert_eq!(code(&out), 3);
    let doc = document(&out);
    assert_eq!(doc.reports[0].status, Status::SkippedBudget);
}

#[test]
fn verify_single_check_passes() {
    let out = qsc(&["verify", "--filter", "T2.9", "--profile", "quick"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("T2.9") && l.contains(" pass ")), "{text}");
}

#[test]
fn verify_all_reports_every_check() {
    let out = qsc(&["verify", "--all", "--profile", "default", "--format", "json"]);
    let doc = document(&out);
    assert_eq!(doc.schema, 1);
    let ids: Vec<_> = doc.reports.iter().map(|r| r.id.as_str()).collect();
    let registered: Vec<_> = registry().iter().map(|c| c.id).collect();
    assert_eq!(ids, registered);
    // T1.1 is the one red check, so the run exits 1.
    let red: Vec<_> = doc.reports.iter().filter(|r| r.status == Status::Fail).map(|r| r.id.as_str()).collect();
    assert_eq!(red, ["T1.1"]);
    assert_eq!(code(&out), 1);
    assert_eq!(doc.summary, Some(Summary::of(&doc.reports)));
    assert!(doc.reports.iter().all(|r| r.elapsed_ms == 0));
}

#[test]
fn json_schema_fields() {
    let out = qsc(&["verify", "--filter", "TIGHT.2.9", "--profile", "quick", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    let r = &v["reports"][0];
    for field in ["id", "status", "checked_count", "bound", "first_counterexample", "elapsed_ms"] {
        assert!(r.get(field).is_some(), "missing {field}");
    }
    assert_eq!(r["first_counterexample"]["n"], 0);
    assert_eq!(r["first_counterexample"]["observed"], "64");
    let out = qsc(&["verify", "--filter", "T2.9", "--profile", "quick", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["reports"][0]["first_counterexample"].is_null());
}

#[test]
fn output_is_byte_deterministic() {
    let a = qsc(&["verify", "--all", "--profile", "quick", "--format", "json"]);
    let b = qsc(&["verify", "--all", "--profile", "quick", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
    let a = qsc(&["verify", "--filter", "T3.*", "--profile", "quick"]);
    let b = qsc(&["verify", "--filter", "T3.*", "--profile", "quick"]);
    assert_eq!(a.stdout, b.stdout);
    let a = qsc(&["list", "--format", "csv"]);
    let b = qsc(&["list", "--format", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}

fn write_run(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full = vec!["verify", "--format", "json", "--output", path.to_str().unwrap()];
    full.extend_from_slice(args);
    qsc(&full);
    path.to_str().unwrap().to_string()
}

#[test]
fn reports_round_trip_through_merge() {
    let dir = tempfile::tempdir().unwrap();
    let file = write_run(dir.path(), "quick.json", &["--all", "--profile", "quick"]);
    let original: ReportDocument = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let out = qsc(&["report", &file, "--format", "json"]);
    assert_eq!(code(&out), 1);
    let merged = document(&out);
    assert_eq!(merged.reports, original.reports);
    assert_eq!(merged.summary, original.summary);

    // Feeding the merged document back is a fixed point.
    let again = dir.path().join("again.json");
    std::fs::write(&again, &out.stdout).unwrap();
    let out2 = qsc(&["report", again.to_str().unwrap(), "--format", "json"]);
    assert_eq!(out2.stdout, out.stdout);
}

#[test]
fn merge_prefers_the_larger_bound() {
    let dir = tempfile::tempdir().unwrap();
    let quick = write_run(dir.path(), "quick.json", &["--filter", "T2.*", "--profile", "quick"]);
    let deep = write_run(dir.path(), "deep.json", &["--filter", "T2.9", "--profile", "deep"]);
    let bound_of = |file: &str| {
        let doc: ReportDocument = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
        doc.reports.iter().find(|r| r.id == "T2.9").unwrap().bound
    };
    let deep_bound = bound_of(&deep);
    assert!(deep_bound > bound_of(&quick));
    for order in [[&quick, &deep], [&deep, &quick]] {
        let out = qsc(&["report", order[0], order[1], "--format", "json"]);
        assert_eq!(code(&out), 0);
        let doc = document(&out);
        let t29 = doc.reports.iter().find(|r| r.id == "T2.9").unwrap();
        assert_eq!(t29.bound, deep_bound);
        assert_eq!(doc.reports.iter().filter(|r| r.id == "T2.9").count(), 1);
        assert!(doc.reports.iter().any(|r| r.id == "T2.8"));
    }
}

#[test]
fn merging_nothing_is_an_empty_summary() {
    let out = qsc(&["report"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "0 checks: 0 pass, 0 fail, 0 skipped-budget, 0 informational\n");
    let out = qsc(&["report", "--format", "json"]);
    let doc = document(&out);
    assert!(doc.reports.is_empty());
    assert_eq!(doc.summary, Some(Summary::default()));
}

#[test]
fn unreadable_reports_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&qsc(&["report", missing.to_str().unwrap()])), 2);
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(code(&qsc(&["report", garbage.to_str().unwrap()])), 2);
    let wrong = dir.path().join("wrong.json");
    std::fs::write(&wrong, r#"{"schema": 2, "reports": []}"#).unwrap();
    assert_eq!(code(&qsc(&["report", wrong.to_str().unwrap()])), 2);
}

#[test]
fn list_shows_every_check() {
    let out = qsc(&["list"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let t37 = text.lines().find(|l| l.starts_with("T3.7 ")).unwrap();
    assert!(t37.contains("(mod 144)"), "{t37}");
    let out = qsc(&["list", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), registry().len());
}

#[test]
fn in_process_entry_point_matches_the_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = qsc::cli::run(["qsc", "coeff", "--fn", "op", "--k", "1", "--limit", "5", "--format", "csv"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), "n,value\n0,1\n1,2\n2,4\n3,8\n4,14\n5,24\n");
    assert!(err.is_empty());
}
