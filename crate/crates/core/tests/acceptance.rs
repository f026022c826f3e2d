//! One PASS/FAIL line per acceptance criterion. Exits nonzero if a gating
//! criterion fails.

use detrep::acceptance::{run_suite, suite_passed};
use detrep::Gf32003;

fn main() {
    // `cargo test` passes harness flags; only plain numbers select criteria.
    let ids: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let results = run_suite::<Gf32003>(&ids, 1, |r| println!("{}", r.line()));
    let passed = results.iter().filter(|r| r.passed).count();
    println!("acceptance: {passed}/{} passed", results.len());
    if !suite_passed(&results) {
        std::process::exit(1);
    }
}
