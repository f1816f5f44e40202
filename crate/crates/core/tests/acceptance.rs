//! The ten acceptance criteria, one pass/fail line each.

use std::process::ExitCode;

use aschbacher::selftest::run_criterion;

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=10 {
        let r = run_criterion(id);
        println!(
            "criterion {:>2} {}: {} ({:.1} s)",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.title,
            r.elapsed_secs
        );
        for line in &r.detail {
            println!("    {line}");
        }
        if !r.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
