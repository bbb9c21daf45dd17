//! Run the property suites on two fixtures and print the verdicts.

use arquiver::cli::{run_suite, FixtureSpec, Suite, SuiteOptions};

fn main() -> arquiver::Result<()> {
    let opts = SuiteOptions { lengths: vec![3, 5], ..SuiteOptions::default() };
    for spec in [FixtureSpec::kt(3, 3), FixtureSpec::nakayama(2, 2, 3)] {
        for suite in [Suite::Splice, Suite::ArAxioms, Suite::LengthDistance, Suite::Stabilization, Suite::ThreeTerm] {
            let r = run_suite(suite, &spec, &opts)?;
            println!("{spec} {}: {}", suite.name(), if r.passed { "pass" } else { "FAIL" });
        }
    }
    Ok(())
}
