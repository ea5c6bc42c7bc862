//! End-to-end runs of the pipeline and the binary on conic pairs.

mod support;

use std::process::Command;

use caustic::cli::{figure1_config, run_pipeline};
use caustic::singular::Kind;
use support::pipeline::*;

#[test]
fn circle_pair_counts() {
    let out = run(CIRCLE, CIRCLE, 7);
    assert_eq!(out.prepared.curve.degree, 8);
    assert_eq!(out.solve.points.len(), 16);
    assert_eq!((out.solve.n_cusps, out.solve.n_nodes, out.solve.n_other), (12, 4, 0));
    assert_eq!(out.cusps_direct, 12);
    assert!(out.report.pass, "{:?}", out.report.failed());
    assert_eq!(node_preimage_counts(&out), vec![2; 4]);
    assert_eq!(off_curve_fibers(&out, 10), vec![4; 10]);
    assert!(conjugation(&out).pass);
    let mults: Vec<u32> = out.profile.iter().map(|p| p.multiplicity).collect();
    assert_eq!(mults.iter().sum::<u32>(), 8);
}

#[test]
fn order_independence_and_determinism() {
    let l = orders_agree(CIRCLE, CIRCLE, 7);
    assert!(l.pass, "{}", l.detail);
    let l = determinism(CIRCLE, CIRCLE, 7);
    assert!(l.pass, "{}", l.detail);
}

#[test]
fn counts_do_not_depend_on_the_instance() {
    let counts = |o: &caustic::cli::RunOutcome| (o.prepared.curve.degree, o.solve.n_cusps, o.solve.n_nodes);
    for seed in [1, 2, 3] {
        assert_eq!(counts(&run(CIRCLE, "x^2 + 2*y^2 - x*y + y - 3", seed)), (8, 12, 4), "seed {seed}");
    }
    let pair = run_pipeline(&figure1_config(CIRCLE, 64)).unwrap();
    assert_eq!(counts(&pair), (8, 12, 4));
    assert!(pair.solve.points.iter().all(|p| p.kind != Kind::Other));
}

fn caustic(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_caustic")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn binary_exit_codes() {
    let (code, stdout, _) = caustic(&["invariants", "2", "2"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("\"chi_Cprime\": -12"), "{stdout}");
    assert_eq!(caustic(&["invariants", "1", "2"]).0, 2);
    assert_eq!(caustic(&["run", CIRCLE, CIRCLE]).0, 0);
    let (code, _, stderr) = caustic(&["run", "y^2 - x^3", CIRCLE]);
    assert_eq!(code, 3);
    assert!(stderr.contains("G1"), "{stderr}");
    assert_eq!(caustic(&["run", CIRCLE, CIRCLE, "--tol-dedup", "10.0"]).0, 5);
}

#[test]
fn binary_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, _, err) = caustic(&["run", CIRCLE, CIRCLE, "--out", d]);
    assert_eq!(code, 0, "{err}");
    for f in ["curve.json", "solve.json", "report.json"] {
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join(f)).unwrap()).unwrap();
        assert_eq!(v["schema"], 1, "{f}");
    }
    let (code, _, err) = caustic(&["figure1", "--out", d, "--resolution", "128"]);
    assert_eq!(code, 0, "{err}");
    let svg = std::fs::read_to_string(dir.path().join("gsds_circle.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="cusp""#).count(), 4);
    let svg = std::fs::read_to_string(dir.path().join("gsds_hyperbola.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="cusp""#).count(), 2);
    let (code, csv, _) = caustic(&["trace", CIRCLE, "--pair", "1,0,0,0,1,0;1.1,0.1,0,-0.2,0.9,0", "--format", "csv", "--resolution", "64"]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("u,v\n") && csv.lines().count() > 100);
}
