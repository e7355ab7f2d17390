//! One test per reproduction criterion. Each prints a single pass/fail line.

use lemni::suite::{run_item, Fault, SuiteOptions};

fn check(id: u8) {
    let outcome = run_item(id, &SuiteOptions::default());
    println!(
        "[{}] {:>2} {} ({:.2}s): {}",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.id,
        outcome.name,
        outcome.elapsed_secs,
        outcome.detail
    );
    assert!(
        outcome.passed,
        "criterion {id} ({}) failed: {}",
        outcome.name, outcome.detail
    );
}

#[test]
fn criterion_01_recurrence_identity() {
    check(1);
}

#[test]
fn criterion_01_detects_flipped_coefficient() {
    let options = SuiteOptions {
        fault: Some(Fault::FlipB2Sign),
        ..SuiteOptions::default()
    };
    let outcome = run_item(1, &options);
    println!(
        "[{}]  1 fault_injection: flipped b2 sign detected = {} ({})",
        if outcome.passed { "FAIL" } else { "PASS" },
        !outcome.passed,
        outcome.detail
    );
    assert!(!outcome.passed);
}

#[test]
fn criterion_02_ode_residuals() {
    check(2);
}

#[test]
fn criterion_03_closed_forms() {
    check(3);
}

#[test]
fn criterion_04_exact_constant() {
    check(4);
}

#[test]
fn criterion_05_lemniscate_convexity() {
    check(5);
}

#[test]
fn criterion_06_lemniscate_starlikeness() {
    check(6);
}

#[test]
fn criterion_07_caratheodory_verdicts() {
    check(7);
}

#[test]
fn criterion_08_transform_convexity() {
    check(8);
}

#[test]
fn criterion_09_admissibility_scans() {
    check(9);
}

#[test]
fn criterion_10_region_scan_soundness() {
    check(10);
}

#[test]
fn criterion_11_hprime_lower_bound() {
    check(11);
}

#[test]
fn criterion_12_strong_convexity() {
    check(12);
}
