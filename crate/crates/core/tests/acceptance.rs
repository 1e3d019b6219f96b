//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test -p detpow --test acceptance -- --nocapture` to see
//! the lines; `detpow selftest` runs the same checks from the CLI.

use detpow::selftest::{self, CriterionOutcome};
use detpow::Guards;

fn check(outcome: CriterionOutcome) {
    println!(
        "[{}] {}: {}",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.name,
        outcome.detail
    );
    assert!(outcome.passed, "{}: {}", outcome.name, outcome.detail);
}

#[test]
fn criterion_1_glynn_scans() {
    check(selftest::glynn_scans(&Guards::default()));
}

#[test]
fn criterion_2_zero_witness_certification() {
    check(selftest::witness_certification(&Guards::default()));
}

#[test]
fn criterion_3_zero_existence_boundary() {
    check(selftest::zero_existence_boundary(&Guards::default()));
}

#[test]
fn criterion_4_order_two_all_nonzero() {
    check(selftest::order_two_has_no_zeros(&Guards::default()));
}

#[test]
fn criterion_5_three_way_agreement() {
    check(selftest::three_way_agreement(&Guards::default()));
}

#[test]
fn criterion_6_global_invariants() {
    check(selftest::global_invariants(&Guards::default()));
}

#[test]
fn criterion_7_latin_bridge() {
    check(selftest::latin_bridge(&Guards::default()));
}

#[test]
fn criterion_8_birkhoff_solution_fidelity() {
    check(selftest::birkhoff_solution_fidelity(&Guards::default()));
}
