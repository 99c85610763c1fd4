use std::path::PathBuf;
use std::process::Command;

use dold_thom::homology::SparseMatrix;
use dold_thom::simplicial::parse_simplicial;
use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).to_string_lossy().into_owned()
}

fn dtf(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_dtf")).arg("--no-timing").args(args).output().expect("dtf runs");
    let report: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("bad report ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().expect("exit code"), report)
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap_or_else(|| panic!("no check `{name}` in {report}"))
}

#[test]
fn report_keys_are_in_schema_order() {
    let out = Command::new(env!("CARGO_BIN_EXE_dtf")).args(["validate", &fixture("z2.monoid")]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let keys = ["\"engine_version\"", "\"command\"", "\"input_hashes\"", "\"checks\"", "\"results\"", "\"error\"", "\"timing\""];
    let positions: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]));
    let report: Value = serde_json::from_str(&text).unwrap();
    assert!(report["timing"]["total_seconds"].is_number());
}

#[test]
fn validate_fixtures() {
    for name in ["z2.monoid", "z3.monoid", "abc.monoid", "trivial3.monoid", "truncated2.monoid", "point.monoid", "threshold.monoid"] {
        let (code, report) = dtf(&["validate", &fixture(name)]);
        assert_eq!(code, 0, "{name}: {report}");
    }
    let (code, report) = dtf(&["validate", "builtin:cyclic:4"]);
    assert_eq!((code, report["results"]["total"].as_bool()), (0, Some(true)));
}

#[test]
fn asymmetric_entry_is_named() {
    let (code, report) = dtf(&["validate", &fixture("asymmetric.monoid")]);
    assert_eq!(code, 1);
    let axioms = check(&report, "axioms");
    assert_eq!(axioms["pass"], false);
    assert!(axioms["computed"].as_str().unwrap().contains("a + b = c but b + a = a"), "{axioms}");
}

#[test]
fn malformed_file_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.monoid");
    std::fs::write(&path, "elements: 0 1\nzero: 0\n1 * 1 = 0\n").unwrap();
    let (code, report) = dtf(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(report["error"].as_str().unwrap().contains("line 3"), "{report}");
}

#[test]
fn nerve_examples() {
    let (code, report) = dtf(&["nerve", &fixture("z2.monoid"), "--homology-through", "4", "--expect", "(Z, Z/2, 0, Z/2, 0)"]);
    assert_eq!(code, 0, "{report}");
    let (code, report) = dtf(&["nerve", &fixture("trivial3.monoid"), "--expect-reduced", "(0, Z^3, 0, 0)"]);
    assert_eq!(code, 0, "{report}");
    let (code, report) = dtf(&["nerve", &fixture("point.monoid")]);
    assert_eq!((code, report["results"]["reduced_homology"].as_str()), (0, Some("(0, 0, 0, 0)")));
}

#[test]
fn wrong_expectation_fails_with_exit_one() {
    let (code, report) = dtf(&["nerve", "builtin:cyclic:2", "--homology-through", "2", "--expect", "(Z, Z, 0)"]);
    assert_eq!(code, 1);
    assert_eq!(check(&report, "homology")["computed"], "(Z, Z/2, 0)");
}

#[test]
fn dold_thom_examples() {
    let (code, report) = dtf(&["dold-thom", &fixture("truncated2.monoid"), "sphere:2", "--homology-through", "4", "--expect", "(Z, 0, Z, 0, Z)"]);
    assert_eq!(code, 0, "{report}");
    let (code, report) = dtf(&["dold-thom", "builtin:trivial:1", "sphere:1", "--homology-through", "2"]);
    assert_eq!((code, report["results"]["homology"].as_str()), (0, Some("(Z, Z, 0)")));
    let (code, report) = dtf(&["dold-thom", &fixture("z2.monoid"), "sphere:2", "--homology-through", "2", "--expect", "(Z, 0, Z/2)"]);
    assert_eq!(code, 0, "{report}");
    let (code, report) = dtf(&["dold-thom", &fixture("threshold.monoid"), "wedge:sphere:1*2", "--bound", "2"]);
    assert_eq!(code, 0, "{report}");
}

#[test]
fn input_errors_exit_two_with_a_report() {
    let threshold = fixture("threshold.monoid");
    let asymmetric = fixture("asymmetric.monoid");
    for args in [
        vec!["dold-thom", "builtin:cyclic:2", "sphere:x"],
        vec!["dold-thom", "builtin:cyclic:2", "/no/such/file"],
        vec!["nerve", "builtin:cyclic:0"],
        vec!["nerve", &threshold],
        vec!["nerve", "builtin:cyclic:2", "--homology-through", "3", "--max-dim", "3"],
        vec!["dold-thom", &asymmetric, "sphere:1"],
        vec!["verify", "bogus"],
    ] {
        let (code, report) = dtf(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(report["error"].is_string(), "{args:?}");
    }
}

#[test]
fn every_suite_passes() {
    for suite in ["nerve-circle", "trivial-smash", "functoriality", "identities", "filtration"] {
        let (code, report) = dtf(&["verify", suite]);
        assert_eq!(code, 0, "{suite}: {report}");
        assert!(!report["checks"].as_array().unwrap().is_empty());
    }
}

#[test]
fn outputs_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("space.sset");
    let matrices = dir.path().join("matrices");
    let (code, report) = dtf(&[
        "dold-thom",
        "builtin:abc",
        "sphere:1",
        "--homology-through",
        "2",
        "--out",
        out.to_str().unwrap(),
        "--export-matrices",
        matrices.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{report}");
    let x = parse_simplicial(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["results"]["fingerprint"].as_str(), Some(x.fingerprint().as_str()));
    assert_eq!(x.meta()["bound"], "inf");
    let nondegenerate = report["results"]["nondegenerate"].as_array().unwrap();
    for k in 1..=3 {
        let m = SparseMatrix::parse_triplets(&std::fs::read_to_string(matrices.join(format!("boundary_{k}.triplets"))).unwrap()).unwrap();
        assert_eq!((m.rows() as u64, m.cols() as u64), (nondegenerate[k - 1].as_u64().unwrap(), nondegenerate[k].as_u64().unwrap()));
    }
    // The written space is a valid input for another run.
    let (code, again) = dtf(&["dold-thom", "builtin:cyclic:2", out.to_str().unwrap(), "--homology-through", "1"]);
    assert_eq!(code, 0, "{again}");
}

#[test]
fn reports_are_deterministic() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_dtf"))
            .env("DTF_THREADS", threads)
            .args(["--no-timing", "dold-thom", "builtin:cyclic:3", "wedge:sphere:1*2", "--homology-through", "2"])
            .output()
            .unwrap();
        out.stdout
    };
    assert_eq!(run("1"), run("4"));
}

#[test]
fn bad_thread_variable_is_an_input_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_dtf")).env("DTF_THREADS", "many").args(["verify", "identities"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
