use schur_realize::suite::{run_criterion, CRITERIA, SUITE_BUDGET_SECONDS};
use std::process::ExitCode;
use std::time::Instant;

const SEED: u64 = 20240611;

fn main() -> ExitCode {
    let start = Instant::now();
    let mut failed = vec![];
    for (id, _) in CRITERIA {
        let r = run_criterion(id, SEED);
        println!(
            "[{}] criterion {:>2} {:<34} {:>7.2}s  {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.seconds,
            r.detail
        );
        if !r.pass {
            failed.push(r.id);
        }
    }
    let total = start.elapsed().as_secs_f64();
    let within = total < SUITE_BUDGET_SECONDS;
    println!(
        "[{}] battery runtime {total:.1}s (budget {SUITE_BUDGET_SECONDS:.0}s)",
        if within { "PASS" } else { "FAIL" }
    );
    if failed.is_empty() && within {
        ExitCode::SUCCESS
    } else {
        eprintln!("acceptance failed: criteria {failed:?}, within budget: {within}");
        ExitCode::FAILURE
    }
}
