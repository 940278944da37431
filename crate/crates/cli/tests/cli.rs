use std::path::Path;
use std::process::{Command, Output};

use qzeta::arith::parse_rational;
use qzeta::brackets::{evaluate, BracketIndex};
use qzeta::relations::RelationSet;
use qzeta::series::QSeries;
use qzeta::Rational;
use serde_json::Value;

fn qzeta_in(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzeta"))
        .args(args)
        .env("QZETA_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn qzeta(args: &[&str]) -> Output {
    let dir = tempfile::tempdir().unwrap();
    qzeta_in(dir.path(), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn expand_examples() {
    let o = qzeta(&["expand", "2;2", "--model", "zeta", "--order", "4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "0, 1, 4, 6, 12");
    assert_eq!(stdout(&qzeta(&["expand", "1", "--model", "mono", "--order", "4"])).trim(), "0, 1, 2, 2, 3");
    assert_eq!(stdout(&qzeta(&["expand", "", "--model", "zeta", "--order", "2"])).trim(), "1, 0, 0");
}

#[test]
fn expand_json_round_trips() {
    for (model, index) in [("bi", "3,1;2,0"), ("zeta", "1,2;2,1"), ("mono", "2,1,3")] {
        let o = qzeta(&["--json", "expand", index, "--model", model, "--order", "40"]);
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        let coeffs: Vec<Rational> = v["coefficients"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| parse_rational(c.as_str().unwrap()).unwrap())
            .collect();
        let idx = BracketIndex::parse(model.parse().unwrap(), index).unwrap();
        assert_eq!(QSeries::from_coeffs(coeffs), evaluate(&idx, 40), "{model} {index}");
    }
}

#[test]
fn cache_is_reused_and_inspectable() {
    let dir = tempfile::tempdir().unwrap();
    let first = stdout(&qzeta_in(dir.path(), &["expand", "3,1;1,2", "--order", "60"]));
    assert!(dir.path().join("expansions.qzc").exists());
    let second = stdout(&qzeta_in(dir.path(), &["expand", "3,1;1,2", "--order", "60"]));
    assert_eq!(first, second);
    let info: Value = serde_json::from_str(&stdout(&qzeta_in(dir.path(), &["--json", "cache", "info"]))).unwrap();
    assert_eq!(info["entries"], 1);
    assert_eq!(code(&qzeta_in(dir.path(), &["cache", "audit"])), 0);
    assert_eq!(code(&qzeta_in(dir.path(), &["cache", "clear"])), 0);
    let info: Value = serde_json::from_str(&stdout(&qzeta_in(dir.path(), &["--json", "cache", "info"]))).unwrap();
    assert_eq!(info["entries"], 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&qzeta(&["expand", "2;x"])), 2);
    assert_eq!(code(&qzeta(&["expand", "2;0", "--model", "zeta"])), 2);
    assert_eq!(code(&qzeta(&["expand", "2;1", "--as-mono"])), 2);
    assert_eq!(code(&qzeta(&["product", "z(1,2)", "z(2,1)", "--kind", "mzv-stuffle"])), 2);
    assert_eq!(code(&qzeta(&["product", "xy", "xz", "--kind", "shuffle"])), 2);
    assert_eq!(code(&qzeta(&["nonsense"])), 2);
    assert_eq!(code(&qzeta(&["asympt", "prop2", "1;0"])), 2);
}

#[test]
fn product_examples() {
    let o = qzeta(&["product", "z(1,1)", "z(1,1)", "--kind", "stuffle"]);
    assert_eq!(stdout(&o).trim(), "2·z(1,1)z(1,1) + z(2,1) − z(1,1)");
    let o = qzeta(&["product", "z(2,1)", "z(2,1)", "--kind", "dual-stuffle", "--check-order", "100"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("pass"));
    let o = qzeta(&["product", "xy", "xy", "--kind", "shuffle"]);
    assert_eq!(stdout(&o).trim(), "2·xyxy + 4·xxyy");
    let o = qzeta(&["product", "z(2,1)", "z(3,1)", "--kind", "mzv-stuffle"]);
    assert_eq!(stdout(&o).trim(), "z(2,1)z(3,1) + z(3,1)z(2,1) + z(5,1)");
}

#[test]
fn duality_and_phi() {
    let o = qzeta(&["dual", "2,1;1,3", "--check-order", "40"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("ζ[3,1;1,2]\n"));
    assert_eq!(stdout(&qzeta(&["dual", "z(2,1)z(1,3)"])).trim(), "z(3,1)z(1,2)");
    let o = qzeta(&["phi", "z(1,2)z(1,2)", "--check-order", "40"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("2·z(1,1)z(1,3) + z(1,2)z(1,2)\n"));
    let o = qzeta(&["phi", "z(1,1)z(1,3)", "--inverse", "--check-order", "40"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn dims_example() {
    let o = qzeta(&["dims", "--model", "zeta", "--max-weight", "4", "--order", "500"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "d_0..d_4 = 1 2 4 8 15");
}

#[test]
fn weight_three_relation() {
    let o = qzeta(&["relations", "--model", "zeta", "--weight", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("1 relations (found at q^200, checked at q^500)"), "{text}");
    assert!(text.contains("ζ[2;1] − 2·ζ[2;2] + 2·ζ[3;1] − 2·ζ[2,1;1,1] = 0"), "{text}");

    let o = qzeta(&["--json", "relations", "--model", "zeta", "--weight", "3", "--with-duality"]);
    let set = RelationSet::from_json(&stdout(&o)).unwrap();
    assert!(set.all_verified());
    let z = |s: &[u32], r: &[u32]| BracketIndex::zeta(s, r).unwrap();
    let rel = [
        (z(&[2], &[2]), Rational::from_integer(2.into())),
        (z(&[2], &[1]), Rational::from_integer((-1).into())),
        (z(&[3], &[1]), Rational::from_integer((-2).into())),
        (z(&[2, 1], &[1, 1]), Rational::from_integer(2.into())),
    ];
    assert!(set.contains(&rel));
}

#[test]
fn asympt_checks() {
    assert_eq!(code(&qzeta(&["asympt", "lemma1", "--n", "3", "--s", "4"])), 0);
    assert_eq!(code(&qzeta(&["asympt", "prop2", "3;1"])), 0);
    let o = qzeta(&["--json", "asympt", "limit", "z(2,1)", "z(2,1)", "--kind", "shuffle_S"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["check"]["mzv_word"], "2·z(2,1)z(2,1) + 4·z(3,1)z(1,1)");
    // a tolerance no float check can meet
    let o = qzeta(&["asympt", "limit", "z(2,1)", "z(2,1)", "--tol", "1e-9"]);
    assert_eq!(code(&o), 1);
    let o = qzeta(&["asympt", "mzv", "3", "--cutoff", "100000"]);
    assert!(stdout(&o).starts_with("ζ(3) ≈ 1.2020569"));
}

#[test]
fn verify_suite_passes() {
    let o = Command::new(env!("CARGO_BIN_EXE_qzeta"))
        .args(["verify", "--suite", "paper"])
        .env_remove("QZETA_CACHE_DIR")
        .env("HOME", tempfile::tempdir().unwrap().path())
        .env_remove("XDG_CACHE_HOME")
        .output()
        .unwrap();
    let text = stdout(&o);
    println!("{text}");
    let failed: Vec<&str> = text.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(code(&o) == 0, failed.is_empty(), "exit code disagrees with the table");
    assert!(failed.is_empty(), "failed items:\n{}", failed.join("\n"));
}
