//! Runs every acceptance criterion at its stated tolerance and prints one
//! PASS/FAIL line per criterion.

use azw_core::repro::{run_criterion, CRITERIA};

#[test]
fn acceptance() {
    let reports: Vec<_> = (1..=CRITERIA).filter_map(run_criterion).collect();
    for r in &reports {
        println!("{r}");
    }
    let failed: Vec<u8> = reports.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
