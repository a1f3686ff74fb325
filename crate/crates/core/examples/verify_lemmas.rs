use percolation_pca::orders::{verify_lemma, Lemma};
use percolation_pca::params::Params;

fn main() {
    for (p, q) in [((1, 5), (3, 10)), ((1, 2), (1, 2)), ((0, 1), (1, 1)), ((1, 1), (0, 1)), ((1, 100), (1, 100))] {
        let params = Params::from_ratios(p, q).unwrap();
        for lemma in [Lemma::One, Lemma::Two] {
            let r = verify_lemma(lemma, &params);
            println!(
                "{params} {lemma:?}: {} comparable, {} incomparable, {} violations, worst margin {}",
                r.comparable, r.incomparable, r.violations, r.worst_margin
            );
        }
    }
}
