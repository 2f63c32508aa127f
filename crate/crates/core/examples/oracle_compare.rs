//! Full cross-check of kD5 and k^D5 against the brute-force group oracle.

use hopfkernel::analysis::oracle_compare;
use hopfkernel::group::{bundled_path, GroupTable, DEFAULT_SEED};
use hopfkernel::{Error, Tolerance};

fn main() -> Result<(), Error> {
    let g = GroupTable::load(bundled_path("D5"))?;
    let report = oracle_compare(&g, DEFAULT_SEED, Tolerance::default())?;
    for s in &report.sections {
        println!(
            "{:<24} {} assertions, {}",
            s.name,
            s.assertions.len(),
            if s.passed() { "pass" } else { "FAIL" }
        );
    }
    println!("overall: {}", if report.passed() { "pass" } else { "fail" });
    Ok(())
}
