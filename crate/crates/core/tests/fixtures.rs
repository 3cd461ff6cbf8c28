//! Groups loaded from files under `tests/fixtures`.

use std::path::PathBuf;

use arcgraph::io::load_group;
use arcgraph::verify::check_order_bound;
use num_bigint::BigUint;

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

#[test]
fn m12_exceeds_the_order_bound() {
    let m12 = load_group(&fixture("m12.txt")).unwrap();
    assert_eq!(m12.order(), BigUint::from(95_040u32));
    assert_eq!(m12.transitivity_grade(5), 5);
    let report = check_order_bound(&m12);
    assert!(report.hypotheses_met);
    assert_eq!(report.bound, BigUint::from(33_792u32));
    assert!(!report.holds);
}

#[test]
fn json_fixture() {
    let s3 = load_group(&fixture("s3.json")).unwrap();
    assert_eq!(s3.order(), BigUint::from(6u32));
    assert_eq!(s3.name(), Some("S3"));
}
