//! Acceptance gate: runs criteria 1-13 and prints one PASS/FAIL line each.
//! Exits non-zero if any criterion fails. `GWBURN_WORKERS` sets the worker
//! count for the statistical criteria (default 1; criterion 13 reruns them
//! with a different count).

use std::process::ExitCode;
use std::time::Instant;

use gwburn::verify::{run_suite, Suite};

fn main() -> ExitCode {
    let workers = std::env::var("GWBURN_WORKERS")
        .ok()
        .and_then(|w| w.parse().ok())
        .unwrap_or(1);
    println!("acceptance: 13 criteria, {workers} worker(s)");
    let start = Instant::now();
    let mut last = Instant::now();
    let results = run_suite(Suite::All, workers, |r| {
        println!("{} [{:.1}s]", r.line(), last.elapsed().as_secs_f64());
        last = Instant::now();
    });
    let results = match results {
        Ok(r) => r,
        Err(e) => {
            println!("FAIL acceptance aborted: {e}");
            return ExitCode::FAILURE;
        }
    };
    let failed = results.iter().filter(|r| !r.passed).count();
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
