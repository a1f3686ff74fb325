//! Two binary rows, all 0 and all 1, driven by the same randomness. The
//! disagreement density is the `?` density of their envelope.

use percolation_pca::params::Params;
use percolation_pca::pca::{coupled_disagreements, Boundary, Configuration, ModelSpec};
use percolation_pca::stream::SeededStream;
use percolation_pca::symbol::Symbol;

fn main() {
    let model = ModelSpec::binary(Params::from_ratios((1, 4), (1, 4)).unwrap());
    let width = 1000;
    let zeros = Configuration::uniform(Symbol::Zero, width, Boundary::Cyclic).unwrap();
    let ones = Configuration::uniform(Symbol::One, width, Boundary::Cyclic).unwrap();
    let seeds = 100;
    let steps = 30;
    let mut mean = vec![0.0; steps as usize + 1];
    for s in 0..seeds {
        let d = coupled_disagreements(&zeros, &ones, &model, steps, &SeededStream::new(s)).unwrap();
        for (m, x) in mean.iter_mut().zip(d) {
            *m += x as f64 / (seeds as f64 * width as f64);
        }
    }
    for (t, m) in mean.iter().enumerate() {
        println!("t={t:>3}  mean disagreement {m:.5}");
    }
}
