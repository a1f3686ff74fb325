//! Evaluates the one-step weight inequality on random invariant measures.
//!
//! Run with `cargo run --release --example weight_inequality [measures]`.

use percolation_pca::measures::{verify_master_inequality, MeasureFamily};
use percolation_pca::params::{rat_string, Params};

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let grid = [(1, 5, 3, 10), (1, 4, 1, 4), (1, 100, 1, 100), (0, 1, 1, 2), (1, 2, 0, 1), (1, 3, 2, 3)];
    let mut failures = 0;
    for family in MeasureFamily::sample_suite(count, 2024) {
        let mu = family.build(6).expect("valid measure");
        for &(pn, pd, qn, qd) in &grid {
            let params = Params::from_ratios((pn, pd), (qn, qd)).unwrap();
            let rep = verify_master_inequality(&mu, &params).unwrap();
            if !rep.passed {
                failures += 1;
                println!("FAIL {} at {}: slack {}", rep.measure, params, rat_string(&rep.slack));
                for t in rep.negative_terms() {
                    println!("  negative term {} = {}", t.name, rat_string(&t.value));
                }
            }
        }
    }
    println!("{} measures x {} parameter points, {} failures", 2 * count, grid.len(), failures);
}
