use std::fs;
use std::process::{Command, Output};

use picard_core::fixtures;
use picard_core::lab::{parse_witness, verify_witness};
use picard_core::linalg::parse_dump;
use serde_json::Value;

fn picard(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_picard")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn stderr_records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stderr)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|_| panic!("stderr line is not JSON: {l}")))
        .collect()
}

#[test]
fn fermat_quartic_is_clean() {
    let out = picard(&["analyze", "fermat_quartic", "--ops", "picard,defect,qan"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["picard"]["dim"], 0);
    assert_eq!(r["q_an"]["value"], 0);
}

#[test]
fn cone_quartic_has_one_open_direction() {
    let out = picard(&["analyze", "cone_quartic", "--ops", "picard,defect"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["picard"]["dim"], 4);
    let nonzero: Vec<&Value> =
        r["picard"]["defects"].as_array().unwrap().iter().filter(|d| d["Q"] != "0").collect();
    assert_eq!(nonzero.len(), 1);
    let warnings = r["warnings"].to_string();
    assert!(warnings.contains("not flagged ordinary"), "{warnings}");
}

#[test]
fn missing_input_exits_two() {
    let out = picard(&["analyze", "missing.json"]);
    assert_eq!(out.status.code(), Some(2));
    let recs = stderr_records(&out);
    assert_eq!(recs[0]["kind"], "Io");
    assert_eq!(recs[0]["input"], "missing.json");
}

#[test]
fn malformed_document_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"F": "x^2 +* y"}"#).unwrap();
    let out = picard(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_records(&out)[0]["kind"], "ParseError");

    fs::write(&bad, "{not json").unwrap();
    assert_eq!(picard(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));

    fs::write(&bad, r#"{"h": "x"}"#).unwrap();
    assert_eq!(picard(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn wrong_expectation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wrong.json");
    let doc = r#"{"name": "wrong", "F": "x^4+y^4+z^4+w^4", "ordinary": true, "expected": {"q_an": 2}}"#;
    fs::write(&path, doc).unwrap();
    let out = picard(&["analyze", path.to_str().unwrap(), "--ops", "qan"]);
    assert_eq!(out.status.code(), Some(1));
    let recs = stderr_records(&out);
    assert!(recs.iter().any(|r| r["kind"] == "AssertionFailure"), "{recs:?}");
}

#[test]
fn every_fixture_meets_its_expectations() {
    let names = fixtures::all_surface_names();
    let mut args = vec!["analyze".to_string()];
    args.extend(names.iter().cloned());
    args.extend(fixtures::curve_names().iter().map(|s| s.to_string()));
    let dir = tempfile::tempdir().unwrap();
    args.extend(["--out".to_string(), dir.path().display().to_string()]);
    let out = picard(&args.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    for name in &names {
        let r: Value = serde_json::from_str(&fs::read_to_string(dir.path().join(format!("{name}.json"))).unwrap()).unwrap();
        for row in r["expected"].as_array().unwrap() {
            assert!(row["status"] == "match" || row["status"] == "waived", "{name}: {row}");
        }
    }
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = picard(&["analyze", "cone_cubic", "--seed", "99", "--out", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    // one input alone and among others gives the same bytes
    let multi = dir.path().join("multi");
    let out = picard(&["analyze", "cone_cubic", "smooth_cubic", "--seed", "99", "--out", multi.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(fs::read(multi.join("cone_cubic.json")).unwrap(), fs::read(&a).unwrap());
}

#[test]
fn document_and_fixture_agree() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("steiner.json");
    fs::write(&path, fixtures::surface_source("steiner_roman").unwrap()).unwrap();
    let from_file = picard(&["analyze", path.to_str().unwrap(), "--ops", "adjoint,picard,pg"]);
    let from_name = picard(&["analyze", "steiner_roman", "--ops", "adjoint,picard,pg"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, from_name.stdout);
}

#[test]
fn field_override_reduces_or_refuses() {
    let out = picard(&["analyze", "cone_quartic", "--field", "prime:5", "--ops", "defect"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["field"], "prime:5");
    assert_eq!(r["picard"]["defects"][3]["Q"], "1");

    let out = picard(&["analyze", "steiner_roman_random", "--field", "prime:2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_records(&out)[0]["kind"], "NotRepresentable");

    assert_eq!(picard(&["analyze", "fermat_quartic", "--field", "prime:9"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(picard(&["analyze", "fermat_quartic", "--ops", "scan"]).status.code(), Some(2));
    assert_eq!(picard(&["analyze", "fermat_quartic", "--ops", ","]).status.code(), Some(2));
    assert_eq!(picard(&["analyze", "fermat_quartic", "--ops", "bogus"]).status.code(), Some(2));
    assert_eq!(picard(&["analyze", "fermat_quartic", "--strategy", "guess"]).status.code(), Some(2));
    assert_eq!(picard(&["analyze"]).status.code(), Some(2));
    assert_eq!(picard(&["scan", "--p", "4", "--degree", "4"]).status.code(), Some(2));
    assert_eq!(picard(&["scan", "--p", "5", "--degree", "4", "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn adjoint_strategies_agree() {
    let mut bases = Vec::new();
    for strategy in ["ideal-span", "point-sampling"] {
        let out = picard(&["analyze", "steiner_roman", "--ops", "adjoint", "--strategy", strategy]);
        assert_eq!(out.status.code(), Some(0));
        let r = stdout_json(&out);
        assert_eq!(r["adjoint"]["strategy"], strategy);
        bases.push(r["adjoint"]["basis"].clone());
    }
    assert_eq!(bases[0], bases[1]);
}

#[test]
fn missing_double_curve_data_is_an_operation_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bare.json");
    let doc = r#"{"name": "bare", "F": "x^2*y^2+y^2*z^2+z^2*x^2-x*y*z*w", "ordinary": true,
        "double_curve": {"generators": [], "samples": [[1, 0, 0, 0]]}}"#;
    fs::write(&path, doc).unwrap();
    let out = picard(&["analyze", path.to_str().unwrap(), "--ops", "adjoint", "--strategy", "ideal-span"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stderr_records(&out).iter().any(|r| r["kind"] == "StrategyUnavailable"));
}

#[test]
fn curves_run_the_syzygy_checks() {
    let out = picard(&["analyze", "nodal_quartic"]);
    assert_eq!(out.status.code(), Some(0));
    let r = stdout_json(&out);
    assert_eq!(r["castelnuovo"], true);
    assert_eq!(r["syzygy_dims"][2]["dim"], 0);
    assert_eq!(r["syzygy_dims"][3]["dim"], 3);
}

#[test]
fn matrices_are_dumped() {
    let dir = tempfile::tempdir().unwrap();
    let out = picard(&["analyze", "cone_cubic", "--ops", "picard", "--dump-matrices", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("cone_cubic.picard.txt")).unwrap();
    let m = parse_dump(&text).unwrap();
    assert!(m.nrows > 0 && m.ncols > 0);
}

#[test]
fn scan_is_deterministic_and_witnesses_verify() {
    let args = ["scan", "--p", "5", "--degree", "4", "--trials", "3", "--recipe", "cone", "--seed", "4"];
    let a = picard(&args);
    let b = picard(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let r = stdout_json(&a);
    let witnesses = r["witnesses"].as_array().unwrap();
    assert!(!witnesses.is_empty());
    for w in witnesses {
        assert!(verify_witness(&parse_witness(&w.to_string()).unwrap()).unwrap());
    }
}
