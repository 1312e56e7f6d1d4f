//! Run a bundled scenario programmatically and inspect its report.
//!
//! The same machinery backs the `constructible run` command line; this
//! example drives it as a library.
//!
//! Run with: cargo run --example scenario_report

use constructible::scenario::{
    bundled_names, bundled_scenario, run_scenario, RunOptions, Status,
};

fn main() -> constructible::Result<()> {
    println!("bundled scenarios:");
    for name in bundled_names() {
        println!("  {name}");
    }

    let def = bundled_scenario("traces_suite")?;
    let opts = RunOptions::default(); // seed 1729, auto worker count, no timings
    let report = run_scenario(&def, &opts)?;

    println!(
        "\n{}: {} checks, {} passed, {} failed, {} errors (exit code {})",
        report.scenario,
        report.summary.total,
        report.summary.passed,
        report.summary.failed,
        report.summary.errors,
        report.exit_code()
    );
    for check in &report.checks {
        let mark = match check.status {
            Status::Pass => "ok  ",
            Status::Fail => "FAIL",
            Status::Error => "ERR ",
        };
        println!("  [{mark}] {:32} {}", check.id, check.detail);
    }

    // Reports serialize to a stable JSON document; identical inputs produce
    // byte-identical reports whatever the worker count.
    println!("\nfirst lines of the JSON report:");
    for line in report.to_json().lines().take(8) {
        println!("  {line}");
    }
    Ok(())
}
