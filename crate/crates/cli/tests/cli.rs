use std::path::Path;
use std::process::{Command, Output};

use spin9kit::clifford::{CliffordSystem, OctonionTable};
use spin9kit::forms::KForm;
use spin9kit::io::read_kform;
use spin9kit::torsion::{embed_one_form, embed_three_form};
use spin9kit::Rational;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spin9kit")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn tau() -> KForm {
    KForm::basis(16, &[0, 1, 2]).unwrap().add(&KForm::basis(16, &[3, 8, 15]).unwrap().scale(&Rational::new(5, 3)))
}

#[test]
fn clifford_suite_passes() {
    let o = run(&["verify", "--suite", "clifford"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(String::from_utf8_lossy(&o.stdout).contains("PASS: suite clifford"));
}

#[test]
fn corrupted_table_fails_with_named_relation() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = OctonionTable::standard().to_strings();
    rows[0][1] = "-e4".into();
    let table = write(dir.path(), "table.json", &serde_json::json!({ "products": rows }).to_string());
    let o = run(&["verify", "--suite", "all", "--quiet", "--octonion-table", &table]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("first failure: clifford.relation "), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let o = run(&["decompose", "--rep", "adjoint", "--octonion-table", &table]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("Clifford relation failed"), "{}", stderr(&o));
}

#[test]
fn malformed_table_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows = OctonionTable::standard().to_strings();
    rows[6][0] = "f2".into();
    let table = write(dir.path(), "table.json", &serde_json::json!({ "products": rows }).to_string());
    let o = run(&["verify", "--suite", "clifford", "--octonion-table", &table]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("products[6][0]"), "{}", stderr(&o));
}

#[test]
fn manifest_is_identical_across_runs_and_thread_counts() {
    let a = run(&["verify", "--suite", "lemma1", "--json", "--threads", "1"]);
    let b = run(&["verify", "--suite", "lemma1", "--json", "--threads", "4"]);
    let c = run(&["verify", "--suite", "lemma1", "--json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let m: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(m["overall"], "PASS");
    assert!(m["entries"][0].get("elapsed_ms").is_none());
}

#[test]
fn classify_and_admissible() {
    let sys = CliffordSystem::build_standard().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let good = embed_three_form(&sys, &tau()).unwrap();
    let good = write(dir.path(), "good.json", &serde_json::to_string(&good.to_json()).unwrap());
    let bad = embed_one_form(&sys, &KForm::basis(16, &[15]).unwrap()).unwrap();
    let bad = write(dir.path(), "bad.json", &serde_json::to_string(&bad.to_json()).unwrap());

    let o = run(&["classify", "--input", &good, "--json"]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!((r["r16"].as_str(), r["p3"].as_str(), r["admissible"].as_bool()), (Some("0"), Some("0"), Some(true)));

    let out = dir.path().join("t.json");
    let o = run(&["admissible", "--input", &good, "--emit-torsion", out.to_str().unwrap(), "--quiet"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let t = read_kform(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(t, tau().scale(&Rational::from_int(-2)));

    let o = run(&["admissible", "--input", &bad]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("not admissible"));
    let o = run(&["admissible", "--input", &bad, "--tolerance", "abc"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn schema_violation_reports_path() {
    let sys = CliffordSystem::build_standard().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let mut j = embed_three_form(&sys, &tau()).unwrap().to_json();
    j.rows[7].pop();
    let f = write(dir.path(), "g.json", &serde_json::to_string(&j).unwrap());
    let o = run(&["classify", "--input", &f]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("rows[7]"), "{}", stderr(&o));
    let f = write(dir.path(), "h.json", "{\"n\": 16, \"basis\": \"sigma\", \"rows\": [[\"1/x\"]]}");
    let o = run(&["classify", "--input", &f]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("rows[0][0]"), "{}", stderr(&o));
    let o = run(&["classify", "--input", "/nonexistent/gamma.json"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn homogeneous_commands() {
    let o = run(&["homogeneous", "--space", "sphere15", "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["naturally_reductive"]["naturally_reductive"], true);
    assert_eq!(r["gamma"]["admissible"], true);
    assert_eq!(r["gamma_identity"]["as_three_form"], true);

    let dir = tempfile::tempdir().unwrap();
    let sp = spin9kit::homogeneous::abelian(3);
    let f = write(dir.path(), "ab.json", &serde_json::to_string(&sp.to_json()).unwrap());
    let o = run(&["homogeneous", "--file", &f]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let mut j = sp.to_json();
    j.metric_n[0][1] = Rational::one();
    let f = write(dir.path(), "bad.json", &serde_json::to_string(&j).unwrap());
    let o = run(&["homogeneous", "--file", &f]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("metric_n[1][0]"), "{}", stderr(&o));
}

#[test]
fn gstructure_commands() {
    let o = run(&["gstructure", "--group", "spin7", "--kernel-image", "--types", "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["kernel_image"]["kernel_dim"], 56);
    assert_eq!(r["types"]["excluded_dim"], 0);

    let dir = tempfile::tempdir().unwrap();
    let e = |a: usize, b: usize| {
        let mut rows = vec![vec!["0".to_string(); 4]; 4];
        rows[b][a] = "1".into();
        rows[a][b] = "-1".into();
        serde_json::json!({ "rows": 4, "cols": 4, "entries": rows })
    };
    let g = serde_json::json!({ "n": 4, "g_basis": [e(0, 1), e(0, 2), e(1, 2)] });
    let f = write(dir.path(), "so3.json", &g.to_string());
    let o = run(&["gstructure", "--file", &f, "--kernel-image"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let g = serde_json::json!({ "n": 4, "g_basis": [e(0, 1), e(2, 3), e(0, 2)] });
    let f = write(dir.path(), "open.json", &g.to_string());
    assert_eq!(code(&run(&["gstructure", "--file", &f])), 2);
}

#[test]
fn scan_and_export() {
    let o = run(&["scan-dimensions", "--max-n", "32", "--json"]);
    assert_eq!(code(&o), 0);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["minimal_pair"], serde_json::json!([8, 21]));
    assert_eq!(code(&run(&["scan-dimensions", "--max-n", "1"])), 2);

    let o = run(&["export-clifford"]);
    assert_eq!(code(&o), 0);
    let b: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(b["matrices"].as_array().unwrap().len(), 9);
    assert_eq!(b["matrices"][8]["entries"][15][15], "-1");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["decompose", "--rep", "nonsense"])), 2);
    assert_eq!(code(&run(&["gstructure"])), 2);
}
