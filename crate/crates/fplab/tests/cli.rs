//! Black-box tests of the installed binary: flag handling, exit codes,
//! and the shape of the JSON reports.

use std::path::Path;
use std::process::{Command, Output};

use fplab::report::{RunReport, ScanReport, Verdict};

fn fplab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fplab"))
        .args(args)
        .output()
        .expect("failed to spawn the binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn read_report(path: &Path) -> RunReport {
    let body = std::fs::read_to_string(path).expect("report file missing");
    serde_json::from_str(&body).expect("report must deserialize")
}

#[test]
fn predict_prints_the_classification_and_exits_zero() {
    let out = fplab(&["predict", "--type", "2,4,5", "--double"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("1, 2, 3, 4, 5, 6, 6, 3, 2, 1"));
    assert!(text.contains("regularity         : 10"));
    assert!(text.contains("total:"), "expected a rendered betti table");
}

#[test]
fn json_report_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = fplab(&[
        "verify",
        "--type",
        "2,3,4,5",
        "--double",
        "--config",
        "spread-out",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let report = read_report(&path);
    assert_eq!(report.schema, "fplab-1");
    assert_eq!(report.command, "verify");
    assert_eq!(report.verdict, Verdict::Match);
    assert_eq!(report.inputs.type_vector.as_deref(), Some(&[2, 3, 4, 5][..]));

    // parse(emit(report)) = report
    let emitted = serde_json::to_string(&report).unwrap();
    let parsed: RunReport = serde_json::from_str(&emitted).unwrap();
    assert_eq!(parsed, report);
}

#[test]
fn verify_nonunique_type_is_not_a_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = fplab(&[
        "verify",
        "--pseudo",
        "1,1,2,2",
        "--config",
        "generic",
        "--seed",
        "7",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "non-unique deviation must exit 0");
    let report = read_report(&path);
    assert!(
        report.notes.iter().any(|n| n.starts_with("expected-nonunique")),
        "notes: {:?}",
        report.notes
    );
    let hf = report.oracle_results.expect("oracle ran").hf.expect("hf recorded");
    assert_eq!(hf.delta_h, vec![1, 2, 3]);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["predict", "--type", "2,4,x"][..],
        &["predict", "--type", "2,4", "--pseudo", "1,1"][..],
        &["predict", "--type", "5,4"][..],
        &["verify", "--type", "1,2", "--mode", "sideways"][..],
        &["reproduce", "definitely-not-an-example"][..],
        &["extremal", "--trials", "3"][..],
        &["scan", "--max-sigma", "40"][..],
        &["verify", "--config", "ctr", "--t", "4"][..],
    ] {
        let out = fplab(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "args {:?}: stderr {}",
            args,
            stderr(&out)
        );
    }
    // and clap's own handling of unknown flags
    let out = fplab(&["verify", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_report_is_canonically_ordered_and_parses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.json");
    let out = fplab(&[
        "scan",
        "--max-sigma",
        "4",
        "--trials",
        "1",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let body = std::fs::read_to_string(&path).unwrap();
    let report: ScanReport = serde_json::from_str(&body).unwrap();
    assert_eq!(report.total, 15);
    let vectors: Vec<&Vec<u32>> = report.entries.iter().map(|e| &e.type_vector).collect();
    let mut sorted = vectors.clone();
    sorted.sort();
    assert_eq!(vectors, sorted, "entries must come in canonical order");
    // every non-unique verdict at this size carries a witness
    for e in &report.entries {
        if e.oracle_runs.is_empty() {
            continue;
        }
        if !e.hf_unique {
            assert!(e.witness.is_some(), "missing witness for {:?}", e.type_vector);
        }
    }
}

#[test]
fn extremal_reports_consistency_with_the_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("extremal.json");
    let out = fplab(&[
        "extremal",
        "--ct",
        "4,2",
        "--trials",
        "4",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("consistent"));
    let report = read_report(&path);
    assert_eq!(report.verdict, Verdict::Match);
    let hf = report.oracle_results.expect("oracle ran").hf.expect("hf recorded");
    assert_eq!(hf.delta_h, vec![1, 2, 3, 4, 5, 5, 2, 2]);
}

#[test]
fn reproduce_is_quiet_about_matches_and_loud_about_ids() {
    let out = fplab(&["reproduce", "--list"]);
    assert!(out.status.success());
    let ids = stdout(&out);
    for id in [
        "pseudo-3-6-6-7-12-14",
        "ex-2-4-5",
        "special-4-5-8-9-10",
        "betti-2-3-4-5",
        "not-unique-1-2-2-3",
        "supp-diff-hf",
        "zt-table",
    ] {
        assert!(ids.contains(id), "missing id {id}");
    }

    let out = fplab(&["reproduce", "supp-diff-hf"]);
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("verdict: match"));
}

#[test]
fn matrix_dump_has_one_row_per_condition() {
    let out = fplab(&[
        "verify", "--type", "1,2", "--dump-matrix", "2", "--mode", "exact",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let start = text.find("condition matrix at degree 2:").expect("dump header");
    // three support points, one value row each, six degree-2 monomials
    let rows: Vec<&str> = text[start..]
        .lines()
        .skip(1)
        .take_while(|l| !l.is_empty())
        .collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        assert_eq!(row.split_whitespace().count(), 6);
    }
}
