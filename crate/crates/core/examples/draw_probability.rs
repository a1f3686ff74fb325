//! Draw-probability upper bounds for the four game versions.
//!
//! `cargo run --release --example draw_probability [p] [q] [samples]`

use percolation_pca::game::{draw_fraction, GameVersion};
use percolation_pca::params::Params;
use percolation_pca::stream::SeededStream;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p = args.first().map(String::as_str).unwrap_or("1/10");
    let q = args.get(1).map(String::as_str).unwrap_or("1/10");
    let samples: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let params = Params::parse(p, q).expect("valid p, q");
    let stream = SeededStream::new(7);
    for v in GameVersion::ALL {
        for h in [5, 10, 20, 40] {
            let e = draw_fraction(v, &params, h, samples, &stream);
            println!(
                "{v} T={h:>3}  draws {:>5}/{samples}  [{:.4}, {:.4}]",
                e.draws, e.ci_low, e.ci_high
            );
        }
    }
}
