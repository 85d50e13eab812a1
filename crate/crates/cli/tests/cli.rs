use std::process::Command;

use trigrad::*;
use trigrad_core::algebra::qt_expand;
use trigrad_core::braid::parse_braid;
use trigrad_core::homfly::homfly_f;
use trigrad_core::homology::{braid_homology, compare_series, euler_characteristic, TriGradedDims};
use trigrad_core::RunConfig;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_trigrad"));
    c.env_remove("TRIGRAD_WORKERS");
    c
}

fn run_ok(args: &[&str]) -> (String, i32) {
    let out = bin().args(args).output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn homology_json_round_trips() {
    let (out, code) = run_ok(&["homology", "1 1", "--qmax", "6", "--json"]);
    assert_eq!(code, EXIT_OK);
    let r: HomologyReport = serde_json::from_str(&out).unwrap();
    assert_eq!(r.braid, "n=2 1 1");
    assert_eq!((r.reduced, r.qmax), (false, 6));
    assert!(r.dims.windows(2).all(|w| w[0] < w[1]));
    let back = serde_json::to_string(&r).unwrap();
    assert_eq!(serde_json::from_str::<HomologyReport>(&back).unwrap(), r);
    assert_eq!(format!("{back}\n"), out);
}

#[test]
fn every_report_round_trips() {
    let h = HomflyReport {
        braid: "n=1".into(),
        f: "x".into(),
        f_tilde: "y".into(),
        qmax: 3,
        series: vec![(1, vec![(-1, "1".into())])],
    };
    let e = EulerReport {
        braid: "b".into(),
        qmax: 4,
        passed: false,
        first_mismatch: Some(3),
        homology: vec![],
        oracle: vec![(3, vec![(0, "-1/2".into())])],
    };
    let i = InvarianceReport {
        braid: "b".into(),
        transformed: "c".into(),
        moves: vec!["stabilize+".into()],
        qmax: 10,
        shift: Some((1, -1, -1)),
    };
    let d = HomDimReport {
        source: "S".into(),
        target: "S".into(),
        bidegree: (0, 0),
        dim: 1,
    };
    let g = GraphReport {
        graph: "circle".into(),
        qmax: 3,
        dims: vec![[0, -1, 1, 1]],
        euler: vec![],
    };
    assert_eq!(
        serde_json::from_str::<HomflyReport>(&serde_json::to_string(&h).unwrap()).unwrap(),
        h
    );
    assert_eq!(
        serde_json::from_str::<EulerReport>(&serde_json::to_string(&e).unwrap()).unwrap(),
        e
    );
    assert_eq!(
        serde_json::from_str::<InvarianceReport>(&serde_json::to_string(&i).unwrap()).unwrap(),
        i
    );
    assert_eq!(
        serde_json::from_str::<HomDimReport>(&serde_json::to_string(&d).unwrap()).unwrap(),
        d
    );
    assert_eq!(
        serde_json::from_str::<GraphReport>(&serde_json::to_string(&g).unwrap()).unwrap(),
        g
    );
}

#[test]
fn output_does_not_depend_on_the_worker_count() {
    let args = ["homology", "1 -2 1", "--qmax", "8", "--json"];
    let (one, _) = run_ok(&[&args[..], &["--workers", "1"]].concat());
    let (four, _) = run_ok(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(one, four);
    let env = bin()
        .args(args)
        .env("TRIGRAD_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), one);
}

#[test]
fn exit_codes() {
    assert_eq!(run_ok(&["homology", "1 q"]).1, EXIT_PARSE);
    assert_eq!(run_ok(&["homology", "1", "--strands", "1"]).1, EXIT_PARSE);
    assert_eq!(run_ok(&["homology", "1", "--qmax", "0"]).1, EXIT_CONFIG);
    assert_eq!(run_ok(&["homology", "1", "--workers", "0"]).1, EXIT_CONFIG);
    let env0 = bin()
        .args(["homology", "1"])
        .env("TRIGRAD_WORKERS", "0")
        .output()
        .unwrap();
    assert_eq!(env0.status.code(), Some(EXIT_CONFIG));
    assert_eq!(run_ok(&["graph-homology", "square"]).1, EXIT_CONFIG);
    assert_eq!(
        run_ok(&["invariance", "1 1", "--move", "destabilize", "--qmax", "4"]).1,
        EXIT_CONFIG
    );
    assert_eq!(
        run_ok(&["invariance", "1 1", "--move", "sideways", "--qmax", "4"]).1,
        EXIT_PARSE
    );
    let inconclusive: Failure = trigrad_core::Error::Inconclusive("window".into()).into();
    assert_eq!(inconclusive.code, EXIT_INCONCLUSIVE);
    assert_eq!(
        run_ok(&[
            "invariance",
            "",
            "--strands",
            "1",
            "--move",
            "stabilize+",
            "--qmax",
            "8"
        ])
        .1,
        EXIT_OK
    );
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("trigrad-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("unknot.txt");
    let (stdout, code) = run_ok(&[
        "homology",
        "",
        "--strands",
        "1",
        "--qmax",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!((stdout.as_str(), code), ("", 0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("poincare: t^-1 q + t^-1 q^3"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn homfly_reports_both_forms() {
    let (u, _) = run_ok(&["homfly", "", "--strands", "1", "--json"]);
    let (s, _) = run_ok(&["homfly", "1", "--json"]);
    let (u, s): (HomflyReport, HomflyReport) = (
        serde_json::from_str(&u).unwrap(),
        serde_json::from_str(&s).unwrap(),
    );
    assert_eq!(u.series, s.series);
    assert_eq!(u.series[0], (1, vec![(-1, "1".to_string())]));
    let (text, _) = run_ok(&["homfly", "-1"]);
    assert!(text.contains("F = ") && text.contains("F~ = "));
}

#[test]
fn poincare_polynomial_format() {
    let mut h = TriGradedDims::new(10);
    assert_eq!(poincare_polynomial(&h), "0");
    h.add(0, -1, 1, 1);
    h.add(1, -2, 3, 2);
    h.add(0, 0, 0, 1);
    assert_eq!(poincare_polynomial(&h), "1 + t^-1 q + 2 t^-2 q^3 s");
}

#[test]
fn euler_check_detects_a_corrupted_sign_convention() {
    let b = parse_braid("1 1 1", None).unwrap();
    let cfg = RunConfig {
        qmax: 8,
        ..RunConfig::default()
    };
    let h = braid_homology(&b, &cfg).unwrap();
    let oracle = qt_expand(&homfly_f(&b).unwrap(), 8).unwrap();
    assert!(compare_series(euler_characteristic(&h), oracle.clone()).passed());
    // Moving every vertex to the opposite cube parity flips the sign of the Euler characteristic.
    let corrupted = h.shifted(1, 0, 0);
    let cmp = compare_series(euler_characteristic(&corrupted), oracle);
    assert!(!cmp.passed());
    assert!(cmp.first_mismatch.is_some());
}

#[test]
fn euler_check_command() {
    let (out, code) = run_ok(&["euler-check", "1 1", "--qmax", "6"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("PASS"));
    let (json, _) = run_ok(&["euler-check", "", "--strands", "1", "--qmax", "6", "--json"]);
    let r: EulerReport = serde_json::from_str(&json).unwrap();
    assert!(r.passed && r.homology == r.oracle);
}
