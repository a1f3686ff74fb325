//! Long envelope run, then the quantities that vanish for a stationary law,
//! read off the empirical window frequencies of the final row.

use percolation_pca::measures::{empirical_measure, stationary_conclusion_check};
use percolation_pca::params::Params;
use percolation_pca::pca::{trajectory, Boundary, Configuration, ModelSpec};
use percolation_pca::stream::SeededStream;
use percolation_pca::symbol::Symbol;

fn main() {
    for (p, q) in [((1, 4), (1, 4)), ((1, 10), (0, 1)), ((0, 1), (1, 10))] {
        let params = Params::from_ratios(p, q).unwrap();
        let init = Configuration::uniform(Symbol::Qmark, 10_000, Boundary::Cyclic).unwrap();
        for steps in [50, 500, 2000] {
            let tr = trajectory(&init, &ModelSpec::envelope(params.clone()), steps, &SeededStream::new(3)).unwrap();
            let mu = empirical_measure(&tr.last, 5).unwrap();
            let r = stationary_conclusion_check(&params, &mu).unwrap();
            println!(
                "{params} t={steps:>4}: mu(?) {:.4}  gauge {:.4}  forced {:?}",
                r.mu_qmark, r.gauge, r.forced
            );
        }
    }
}
