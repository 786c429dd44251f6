use std::path::{Path, PathBuf};

use assert_cmd::Command;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn ennea() -> Command {
    Command::cargo_bin("ennea").unwrap()
}

fn stdout_of(args: &[&str], code: i32) -> String {
    let out = ennea().args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(code), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn dim3_of_ennea_preset() {
    let out = stdout_of(&["operad", "dim3", "--preset", "ennea", "--t", "1"], 0);
    assert_eq!(out, "dim P'(3) = 113, rank = 49\n");
    assert_eq!(out, golden("dim3_ennea.txt"));
}

#[test]
fn dim3_from_exported_presentation() {
    let dir = tempfile::tempdir().unwrap();
    let pres = dir.path().join("quadri.json");
    stdout_of(&["operad", "export", "--preset", "quadri", "--out", p(&pres)], 0);
    let out = stdout_of(&["operad", "dim3", "--file", p(&pres), "--t", "2/3"], 0);
    assert_eq!(out, "dim P'(3) = 23, rank = 9\n");
}

#[test]
fn zero_trialgebra_passes() {
    let out = stdout_of(&["verify", "trialgebra", "--input", p(&fixture("zero_trialgebra.json"))], 0);
    assert!(out.starts_with("PASS: "), "{out}");
}

#[test]
fn malformed_json_reports_position() {
    let out = ennea().args(["verify", "hypercubic", "--graph", p(&fixture("malformed.json"))]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.starts_with("ERROR: "), "{err}");
    assert!(err.contains("line 3 column"), "{err}");
}

#[test]
fn wrong_document_kind_is_an_input_error() {
    let out = ennea().args(["verify", "ennea", "--input", p(&fixture("line2.json"))]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("expected type \"ennea\", found \"graph\""));
}

#[test]
fn usage_errors_exit_2() {
    ennea().args(["operad", "dim3"]).assert().code(2);
    ennea().args(["operad", "dim3", "--preset", "ennea", "--t", "one"]).assert().code(2);
    ennea().args(["operad", "dim3", "--preset", "nonesuch"]).assert().code(2);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        vec!["demo"],
        vec!["deform", "derive", "--preset", "quadri"],
        vec!["verify", "graph-bialgebra", "--graph", p(&fixture("line2.json")), "--coproduct", "hat"],
    ] {
        let first = ennea().args(&args).output().unwrap();
        let second = ennea().args(&args).output().unwrap();
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.status.code(), second.status.code());
    }
}

#[test]
fn end_ennea_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (a, d, e) = (dir.path().join("a.json"), dir.path().join("d.json"), dir.path().join("e.json"));
    let g = fixture("line2.json");
    stdout_of(&["construct", "path-algebra", "--graph", p(&g), "--out", p(&a)], 0);
    stdout_of(&["construct", "coproduct", "--graph", p(&g), "--kind", "weighted", "--out", p(&d)], 0);
    stdout_of(&["verify", "bialgebra", "--algebra", p(&a), "--coproduct", p(&d), "--t", "0"], 0);
    let built = stdout_of(&["construct", "end-ennea", "--algebra", p(&a), "--coproduct", p(&d), "--t", "0", "--out", p(&e)], 0);
    assert!(built.contains("dimension 9"));
    let checked = stdout_of(&["verify", "ennea", "--input", p(&e)], 0);
    assert!(checked.starts_with("PASS: "));
    let units = stdout_of(&["verify", "unit-action", "--ennea", p(&e)], 0);
    assert!(units.contains("213 skipped (undefined)"), "{units}");
    assert!(units.contains("e⋆̄1 = e, 1⋆̄e = e"), "{units}");
    stdout_of(&["verify", "coherence", "--left", p(&e), "--right", p(&e)], 0);
}

#[test]
fn hat_coproduct_fails_with_witness() {
    let out = stdout_of(&["verify", "graph-bialgebra", "--graph", p(&fixture("line2.json")), "--coproduct", "hat"], 1);
    assert_eq!(out, golden("hat_bialgebra.txt"));
    stdout_of(&["verify", "graph-bialgebra", "--graph", p(&fixture("line2.json")), "--coproduct", "weighted"], 0);
    stdout_of(&["verify", "hypercubic", "--graph", p(&fixture("line2.json"))], 0);
}

#[test]
fn baxter_and_trialgebra_construction() {
    let dir = tempfile::tempdir().unwrap();
    let (a, s) = (dir.path().join("a.json"), dir.path().join("s.json"));
    stdout_of(&["construct", "path-algebra", "--graph", p(&fixture("line2.json")), "--out", p(&a)], 0);
    let minus = fixture("minus_id3.json");
    stdout_of(&["verify", "baxter", "--algebra", p(&a), "--op", p(&minus), "--t", "1"], 0);
    let bad = stdout_of(&["verify", "baxter", "--algebra", p(&a), "--op", p(&fixture("id3.json")), "--t", "1"], 1);
    assert!(bad.contains("witness"));
    stdout_of(&["construct", "trialgebra", "--algebra", p(&a), "--op", p(&minus), "--t", "1", "--out", p(&s)], 0);
    stdout_of(&["verify", "trialgebra", "--input", p(&s)], 0);
}

#[test]
fn deformation_data_checks() {
    let data = fixture("two_weightings.json");
    for system in ["syst1", "syst3"] {
        let out = stdout_of(&["deform", "check", "--data", p(&data), "--system", system, "--truncation", "3"], 0);
        assert!(out.contains("checked modulo h^3"));
    }
    for rules in ["zz", "zz1"] {
        let out = stdout_of(&["verify", "unit-action", "--data", p(&data), "--system", "syst1", "--rules", rules], 0);
        assert!(out.contains("total product is unital"), "{out}");
    }
}

#[test]
fn derive_prints_the_system() {
    let out = stdout_of(&["deform", "derive", "--preset", "tridend", "--labeling", "circ-free"], 0);
    assert_eq!(out, golden("derive_tridend_circ_free.txt"));
}

#[test]
fn demo_table() {
    let out = stdout_of(&["demo"], 1);
    assert_eq!(out, golden("demo.txt"));
    for (item, value) in [("ennea", 113), ("quadri", 23), ("def_dd_td", 34), ("def_td_td", 51), ("def_quadri", 101), ("def_ennea", 501)] {
        let row = out.lines().find(|l| l.starts_with(&format!("dim {item}(3) "))).unwrap();
        let cells: Vec<&str> = row.split('|').map(str::trim).collect();
        assert_eq!(cells[1..], [value.to_string().as_str(), value.to_string().as_str(), "OK"], "{row}");
    }
    let hat = out.lines().find(|l| l.starts_with("hat coproduct")).unwrap();
    assert!(hat.ends_with("MISMATCH"));
}

#[test]
fn json_report_matches_status() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    stdout_of(&["--json", p(&report), "verify", "graph-bialgebra", "--graph", p(&fixture("line2.json")), "--coproduct", "hat"], 1);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["checks_run"], 12);
    assert_eq!(v["witnesses"][0]["tuple"], serde_json::json!([0, 1]));
    assert_eq!(v["witnesses"][0]["rhs"][1], "-1");
}
