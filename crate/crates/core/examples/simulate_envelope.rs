//! Envelope automaton from the all-`?` row; prints the `?` density every few steps.
//!
//! `cargo run --release --example simulate_envelope [p] [q] [width] [steps]`

use percolation_pca::params::Params;
use percolation_pca::pca::{trajectory, Boundary, Configuration, ModelSpec};
use percolation_pca::stream::SeededStream;
use percolation_pca::symbol::Symbol;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let params = Params::parse(&arg(0, "1/4"), &arg(1, "1/4")).expect("valid p, q");
    let width: usize = arg(2, "10000").parse().unwrap();
    let steps: u64 = arg(3, "200").parse().unwrap();

    let init = Configuration::uniform(Symbol::Qmark, width, Boundary::Cyclic).unwrap();
    let tr = trajectory(&init, &ModelSpec::envelope(params.clone()), steps, &SeededStream::new(1)).unwrap();
    println!("{params}, width {width}");
    for row in tr.rows.iter().filter(|r| r.t % (steps / 20).max(1) == 0) {
        println!("t={:>5}  ?-density {:.4}", row.t, row.density(Symbol::Qmark));
    }
}
