use std::process::Command;

use weylcheck::cli::{main_with_args, run, Check, JobSpec, ModeArg, Report};
use weylcheck::cartan::catalog;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("weylcheck").chain(args.iter().copied());
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn sl2_full_pipeline_exits_zero() {
    let (code, out, _) = invoke(&["verify", "--catalog", "A1"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("overall: PASS"));
}

#[test]
fn exit_status_tracks_failures() {
    let (code, out, _) = invoke(&["verify", "--catalog", "A2", "--checks", "borel-upper", "--mode", "classical"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL ad(E1)^2(E2) = 0"));
    let (code, _, _) = invoke(&["verify", "--matrix", "2 -1; -1 2", "--checks", "weyl-embedding,biproduct"]);
    assert_eq!(code, 0);
}

#[test]
fn structured_report_round_trips() {
    let (_, out, _) = invoke(&["verify", "--catalog", "B2", "--format", "structured"]);
    let report = Report::from_json(&out).unwrap();
    assert_eq!(report.version, "1.0");
    assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
}

#[test]
fn identical_jobs_give_identical_reports() {
    let job = JobSpec::new(catalog("G2").unwrap(), ModeArg::Both, &[]);
    let a = run(&job).unwrap().without_timings();
    let b = run(&job).unwrap().without_timings();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn corrupt_beta_breaks_the_datum() {
    let (code, out, _) = invoke(&["verify", "--catalog", "A2", "--mode", "classical", "--checks", "datum", "--corrupt-beta"]);
    assert_ne!(code, 0);
    assert!(out.contains("FAIL D1^2(b2) = 0  residual: 1/2"), "{out}");
    let (code, _, _) = invoke(&["verify", "--catalog", "A2", "--mode", "classical", "--checks", "datum"]);
    assert_eq!(code, 0);
}

#[test]
fn affine_embedding_carries_note() {
    let (code, out, _) = invoke(&["verify", "--catalog", "A1^(1)", "--checks", "weyl-embedding"]);
    assert_eq!(code, 0);
    assert!(out.contains("NOTE: corank 1"));
}

#[test]
fn analyze_reports_corank() {
    let (code, out, _) = invoke(&["analyze", "--matrix", "2 -2; -2 2", "--format", "structured"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["matrix"]["corank"], 1);
}

#[test]
fn parse_and_validation_errors() {
    let (code, _, err) = invoke(&["analyze", "--matrix", "2 -1; -1 x"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1, column 10"), "{err}");
    let (code, _, err) = invoke(&["analyze", "--matrix", "2 -1; 0 2"]);
    assert_eq!(code, 2);
    assert!(err.contains("(2,1)"), "{err}");
    let (code, _, err) = invoke(&["verify", "--catalog", "A2", "--checks", "biproduct", "--degree-bound", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("degree bound"));
}

#[test]
fn rewrite_one_shot() {
    let (code, out, _) = invoke(&["rewrite", "--catalog", "A1", "F1*E1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "E1*F1 - H1");
    let (_, out, _) = invoke(&["rewrite", "--catalog", "A1", "--mode", "quantum", "F1*E1"]);
    assert!(out.trim().starts_with("E1*F1"), "{out}");
}

#[test]
fn matrix_file_with_symmetrizer() {
    let dir = std::env::temp_dir().join(format!("weylcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b2.txt");
    std::fs::write(&path, "2\n2 -2\n-1 2\nd: 1 2\n").unwrap();
    let (code, out, _) = invoke(&["analyze", "--matrix-file", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("symmetrizer d: [1, 2]"));
    std::fs::write(&path, "2\n2 -2\n-1 2\nd: 1 1\n").unwrap();
    let (code, _, err) = invoke(&["analyze", "--matrix-file", path.to_str().unwrap()]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_weylcheck"))
        .args(["verify", "--catalog", "A1", "--format", "structured"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report = Report::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert!(report.pass);
    assert!(report.sections.iter().any(|s| s.check == Check::Biproduct));
}
