use spin9kit::clifford::OctonionTable;
use spin9kit::verify::{run_suite, Status, Suite, SuiteOptions};

#[test]
fn fault_injection_names_first_failing_relation() {
    let table = OctonionTable::standard().with_entry(1, 2, -1, 4);
    let m = run_suite(Suite::Clifford, &SuiteOptions { table, ..Default::default() });
    assert_eq!(m.overall, Status::Fail);
    let first = m.first_failure().unwrap();
    assert!(first.name.starts_with("clifford.relation "), "{}", first.name);
}

#[test]
fn all_suite_is_deterministic() {
    let opts = SuiteOptions::default();
    let a = run_suite(Suite::All, &opts);
    let b = run_suite(Suite::All, &opts);
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}
