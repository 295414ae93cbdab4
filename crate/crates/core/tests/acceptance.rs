//! One line per acceptance criterion; exits non-zero if any check fails.

use std::process::ExitCode;
use std::time::Instant;

use fflat::verify::{checks, open_question_outputs, run_check, Caps, Status};

fn main() -> ExitCode {
    let caps = Caps::default();
    let mut failed = 0;
    println!("acceptance: {} criteria", checks().len());
    for info in checks() {
        let start = Instant::now();
        let outcome = run_check(info.name, &caps).expect("check names come from the table");
        let verdict = match &outcome.status {
            Status::Pass => "PASS".to_string(),
            Status::Fail(why) => {
                failed += 1;
                format!("FAIL ({why})")
            }
            // a skipped criterion is not a pass
            Status::Skipped(why) => {
                failed += 1;
                format!("SKIPPED ({why})")
            }
        };
        println!(
            "criterion {:>2} {:<24} {verdict}  [{:.2}s]",
            info.criterion,
            info.name,
            start.elapsed().as_secs_f64()
        );
        if !outcome.passed() {
            for (k, v) in &outcome.details {
                println!("    {k}: {v}");
            }
        }
    }

    println!("open questions (computed, no expected values):");
    match open_question_outputs(&caps) {
        Ok(rows) => {
            for (k, v) in rows {
                println!("    {k}: {v}");
            }
        }
        Err(e) => println!("    unavailable: {e}"),
    }

    println!("acceptance: {} passed, {failed} not passed", checks().len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
