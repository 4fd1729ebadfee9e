//! Acceptance suite: runs every verification criterion at its pinned
//! tolerance, prints one pass/fail line per criterion, and enforces the
//! runtime budgets that apply to some of them.

use std::time::{Duration, Instant};

use abeldisk::verify::{self, CriterionResult};

fn report(r: &CriterionResult, elapsed: Duration) -> bool {
    println!(
        "[{}] {} ({:.2}s)",
        if r.passed { "PASS" } else { "FAIL" },
        r.name,
        elapsed.as_secs_f64()
    );
    if !r.passed {
        for line in &r.details {
            println!("       {line}");
        }
    }
    r.passed
}

fn timed(
    f: impl FnOnce() -> CriterionResult,
    budget: Option<Duration>,
) -> (CriterionResult, Duration, bool) {
    let t0 = Instant::now();
    let r = f();
    let elapsed = t0.elapsed();
    let in_budget = budget.is_none_or(|b| elapsed <= b);
    (r, elapsed, in_budget)
}

type Criterion = fn() -> CriterionResult;

#[test]
fn acceptance() {
    let secs = |s: u64| Some(Duration::from_secs(s));
    let cases: Vec<(Criterion, Option<Duration>)> = vec![
        (verify::coefficient_accuracy, secs(10)),
        (verify::growth_classification, secs(1)),
        (verify::threshold_scan, secs(1)),
        (verify::reconstruction_convergent, secs(30)),
        (verify::reconstruction_jump, None),
        (verify::delta_kernel_checks, None),
        (verify::reproducing_property, None),
        (verify::uniqueness, None),
    ];

    let mut all_ok = true;
    for (criterion, budget) in cases {
        let (r, elapsed, in_budget) = timed(criterion, budget);
        all_ok &= report(&r, elapsed);
        if !in_budget {
            println!("       runtime budget exceeded: {:.2}s", elapsed.as_secs_f64());
            all_ok = false;
        }
    }
    assert!(all_ok, "one or more acceptance criteria failed");
}
