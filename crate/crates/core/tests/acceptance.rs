//! Acceptance criteria. Each suite runs at its stated tolerances and within
//! its wall-clock budget; one PASS/FAIL line is printed per criterion, with
//! the individual checks indented below it. Exits nonzero on any failure.

use std::process::ExitCode;

use nilgeom::verify::{Suite, VerifyConfig};

fn main() -> ExitCode {
    let cfg = VerifyConfig::default();
    let mut failures = 0;
    for suite in Suite::ALL {
        let report = suite.run(&cfg);
        let in_budget = report.elapsed <= suite.budget();
        let pass = report.pass && in_budget;
        println!(
            "{} {suite} ({:.2} s, budget {} s)",
            if pass { "PASS" } else { "FAIL" },
            report.elapsed.as_secs_f64(),
            suite.budget().as_secs()
        );
        for c in &report.checks {
            println!("    {c}");
        }
        for n in &report.notes {
            println!("    note: {n}");
        }
        if !in_budget {
            println!("    over budget");
        }
        failures += usize::from(!pass);
    }

    // The harness must notice a broken connection table.
    let tampered = Suite::Connection.run(&VerifyConfig { tamper_connection: true, ..cfg });
    let detected = !tampered.pass && tampered.failing().any(|c| c.name.starts_with("connection-compatibility"));
    println!("{} tampered-connection-detected", if detected { "PASS" } else { "FAIL" });
    failures += usize::from(!detected);

    println!("{} criteria failed", failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
