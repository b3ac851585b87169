use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use workbench::cherednik::{CentralJson, HElement};
use workbench::expr;
use workbench::ring::Ring;
use workbench::quasiexp::QExpSpace;
use workbench::rational::frac;
use workbench::series::SeriesJson;
use workbench::upoly::UPoly;

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn h2(s: &str) -> HElement {
    expr::eval(s, &HElement::one(2), |name| {
        Some(match name {
            "x1" => HElement::x(2, 0),
            "x2" => HElement::x(2, 1),
            "y1" => HElement::y(2, 0),
            "y2" => HElement::y(2, 1),
            "s12" => HElement::s(2, 0, 1),
            _ => return None,
        })
    })
    .unwrap()
}

fn read_series(p: &Path) -> SeriesJson {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn central_n2_constant_term() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = workbench(&["central", "--n", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let table: CentralJson = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(table.coeffs.len(), 9);
    let c22 = table.coeffs.iter().find(|e| e.i == 2 && e.j == 2).unwrap();
    let got = HElement::from_json(&c22.c).unwrap();
    assert_eq!(got, h2("1+x1x2y1y2-x1y1-x2y2-s12"));
    let c00 = table.coeffs.iter().find(|e| e.i == 0 && e.j == 0).unwrap();
    assert_eq!(HElement::from_json(&c00.c).unwrap(), HElement::one(2));
}

#[test]
fn central_n1_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    assert_eq!(code(&workbench(&["central", "--n", "1", "--out", out.to_str().unwrap()])), 0);
    let table: CentralJson = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(table.coeffs.len(), 4);
    let c = |i: usize, j: usize| {
        let e = table.coeffs.iter().find(|e| e.i == i && e.j == j).unwrap();
        HElement::from_json(&e.c).unwrap()
    };
    // (v - x)(u - y) - 1
    let (x, y, one) = (HElement::x(1, 0), HElement::y(1, 0), HElement::one(1));
    assert_eq!(c(0, 0), one);
    assert_eq!(c(1, 0), x.neg());
    assert_eq!(c(0, 1), y.neg());
    assert_eq!(c(1, 1), x.h_mul(&y).unwrap().sub(&one));
}

#[test]
fn central_over_bound_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    assert_eq!(code(&workbench(&["central", "--n", "9", "--out", out.to_str().unwrap()])), 3);
    assert!(!out.exists());
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(code(&workbench(&["central", "--n", "two", "--out", "x"])), 2);
    assert_eq!(code(&workbench(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&workbench(&["frobnicate"])), 2);
    assert_eq!(code(&workbench(&["psi", "--order", "3"])), 2);
}

#[test]
fn verify_examples() {
    for args in [
        &["verify", "--suite", "zb", "--n", "2"][..],
        &["verify", "--suite", "n2-golden"][..],
        &["verify", "--suite", "wilson", "--n", "3", "--trials", "10"][..],
    ] {
        let o = workbench(args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stdout));
        let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(report["passed"], true);
        assert!(report["first_failure"].is_null());
        assert_eq!(report["suite"], args[2]);
    }
}

#[test]
fn every_suite_catches_an_injected_fault() {
    for suite in ["zb", "satake", "wilson", "bethe-comm", "dunkl", "n2-golden", "multisym", "cm-identity"] {
        let base = ["verify", "--suite", suite, "--n", "2", "--trials", "3"];
        let o = workbench(&base);
        assert_eq!(code(&o), 0, "{suite}: {}", String::from_utf8_lossy(&o.stdout));
        let mut faulty = base.to_vec();
        faulty.push("--inject-fault");
        let o = workbench(&faulty);
        assert_eq!(code(&o), 1, "{suite} missed the fault");
        let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(report["passed"], false);
        assert!(report["first_failure"].as_str().is_some_and(|s| !s.is_empty()));
    }
}

#[test]
fn reports_are_single_json_lines_and_deterministic() {
    let args = ["verify", "--suite", "cm-identity", "--n", "2", "--seed", "5", "--trials", "2"];
    let a = workbench(&args);
    let b = workbench(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
}

#[test]
fn psi_of_the_origin() {
    let dir = tempfile::tempdir().unwrap();
    let point = dir.path().join("p.json");
    fs::write(&point, r#"{"N": 1, "Z": [["0"]], "L": [["0"]]}"#).unwrap();
    let out = dir.path().join("psi.json");
    let o = workbench(&["psi", "--point", point.to_str().unwrap(), "--order", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let s = read_series(&out);
    for i in 0..=5 {
        for j in 0..=5 {
            let want = match (i, j) {
                (0, 0) => "1",
                (1, 1) => "-1",
                _ => "0",
            };
            assert_eq!(s.coeffs[i][j], want, "({i},{j})");
        }
    }
}

#[test]
fn psi_truncation_is_a_prefix() {
    let dir = tempfile::tempdir().unwrap();
    let point = dir.path().join("p.json");
    fs::write(&point, r#"{"N": 2, "Z": [["0", "-2/3"], ["2/3", "1"]], "L": [["1", "0"], ["0", "-1/2"]]}"#).unwrap();
    let (o4, o8) = (dir.path().join("4.json"), dir.path().join("8.json"));
    for (t, o) in [("4", &o4), ("8", &o8)] {
        let r = workbench(&["psi", "--point", point.to_str().unwrap(), "--order", t, "--out", o.to_str().unwrap()]);
        assert_eq!(code(&r), 0, "{}", String::from_utf8_lossy(&r.stderr));
    }
    let (s4, s8) = (read_series(&o4), read_series(&o8));
    for i in 0..=4 {
        assert_eq!(s4.coeffs[i][..], s8.coeffs[i][..=4]);
    }
}

#[test]
fn psi_rejects_malformed_and_non_cm_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(code(&workbench(&["psi", "--point", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&workbench(&["psi", "--qexp", bad.to_str().unwrap()])), 2);
    let not_cm = dir.path().join("id.json");
    fs::write(&not_cm, r#"{"N": 2, "Z": [["1", "0"], ["0", "1"]], "L": [["1", "0"], ["0", "1"]]}"#).unwrap();
    assert_eq!(code(&workbench(&["psi", "--point", not_cm.to_str().unwrap()])), 2);
    assert_eq!(code(&workbench(&["psi", "--point", dir.path().join("missing").to_str().unwrap()])), 2);
    let both = workbench(&["psi", "--point", bad.to_str().unwrap(), "--qexp", bad.to_str().unwrap()]);
    assert_eq!(code(&both), 2);
}

#[test]
fn qexp_round_trip_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let w = QExpSpace::new(vec![
        (UPoly::new(vec![frac(1, 2), frac(1, 1)]), frac(0, 1)),
        (UPoly::new(vec![frac(3, 1)]), frac(-2, 3)),
    ])
    .unwrap();
    let input = dir.path().join("w.json");
    fs::write(&input, serde_json::to_string(&w.to_json()).unwrap()).unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert_eq!(code(&workbench(&["psi", "--qexp", input.to_str().unwrap(), "--order", "5", "--out", a.to_str().unwrap()])), 0);
    let back = QExpSpace::from_json(&serde_json::from_str(&fs::read_to_string(&input).unwrap()).unwrap()).unwrap();
    let input2 = dir.path().join("w2.json");
    fs::write(&input2, serde_json::to_string(&back.to_json()).unwrap()).unwrap();
    assert_eq!(fs::read(&input).unwrap(), fs::read(&input2).unwrap());
    assert_eq!(code(&workbench(&["psi", "--qexp", input2.to_str().unwrap(), "--order", "5", "--out", b.to_str().unwrap()])), 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let psi = read_series(&a);
    assert_eq!(psi.coeffs[0][0], "1");
}
