//! Acceptance criteria over the embedded knot table. Each test prints one
//! `criterion N PASS|FAIL ...` line; run with `--nocapture` to see them.

use std::sync::OnceLock;

use knotperi::acceptance::run;
use knotperi::table::{parse_table, KnotTableEntry, EMBEDDED};

fn table() -> &'static [KnotTableEntry] {
    static TABLE: OnceLock<Vec<KnotTableEntry>> = OnceLock::new();
    TABLE.get_or_init(|| parse_table(EMBEDDED).expect("embedded table"))
}

fn check(id: usize) {
    let outcome = run(id, table());
    println!("{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn criterion_01_grid_presentation() {
    check(1);
}

#[test]
fn criterion_02_golden_block() {
    check(2);
}

#[test]
fn criterion_03_oracle_equivalence() {
    check(3);
}

#[test]
fn criterion_04_boundary_commutes() {
    check(4);
}

#[test]
fn criterion_05_peripheral_round_trip() {
    check(5);
}

#[test]
fn criterion_06_arc_families() {
    check(6);
}

#[test]
fn criterion_07_deterministic_walks() {
    check(7);
}

#[test]
fn criterion_08_unoriented_construction() {
    check(8);
}

#[test]
fn criterion_09_gauss_round_trip() {
    check(9);
}

#[test]
fn criterion_10_geodesic_embedding() {
    check(10);
}
