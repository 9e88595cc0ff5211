//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`).

use sendov_lab::verify::{run_criterion, Outcome};

const SEED: u64 = 0;

fn check(id: usize) {
    let o: Outcome = run_criterion(id, SEED);
    let status = if o.passed { "pass" } else { "FAIL" };
    println!(
        "criterion {:2} {:<28} {} ({:.2}s) — {}",
        o.id, o.name, status, o.seconds, o.detail
    );
    assert!(o.passed, "criterion {} ({}) failed: {}", o.id, o.name, o.detail);
}

#[test]
fn criterion_01_zero_maximal_value() {
    check(1);
}

#[test]
fn criterion_02_classification_round_trip() {
    check(2);
}

#[test]
fn criterion_03_znz_inextensible() {
    check(3);
}

#[test]
fn criterion_04_lp_duality() {
    check(4);
}

#[test]
fn criterion_05_quartic_constant() {
    check(5);
}

#[test]
fn criterion_06_quintic_constant() {
    check(6);
}

#[test]
fn criterion_07_non_maximality_witnesses() {
    check(7);
}

#[test]
fn criterion_08_quartic_rederivation() {
    check(8);
}

#[test]
fn criterion_09_cubic_order_slopes() {
    check(9);
}

#[test]
fn criterion_10_sensitivity_correctness() {
    check(10);
}

#[test]
fn criterion_11_bottleneck_oracle() {
    check(11);
}

#[test]
fn criterion_12_inequality_sweeps() {
    check(12);
}

#[test]
fn criterion_13_local_maximality_probe() {
    check(13);
}
