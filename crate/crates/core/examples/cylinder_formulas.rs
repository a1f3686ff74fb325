//! Closed forms for one-step image probabilities, with their residuals,
//! on a product measure.

use percolation_pca::measures::{closed_form, identities, FormulaId, MeasureFamily};
use percolation_pca::params::{rat, rat_string, Params};

fn main() {
    let mu = MeasureFamily::product(rat(1, 2), rat(3, 10), rat(1, 5))
        .unwrap()
        .build(8)
        .unwrap();
    let params = Params::from_ratios((1, 5), (3, 10)).unwrap();
    println!("{}", mu.descriptor());
    for id in FormulaId::ALL {
        let e = closed_form(id, &mu, &params).unwrap();
        println!("F mu({}) = {}  agrees: {}", e.target, rat_string(&e.pushforward), e.agrees());
        for r in &e.residuals {
            println!("    {} = {}", r.name, rat_string(&r.value));
        }
    }
    for id in identities(&mu).unwrap() {
        println!("{}{}: {}", if id.review_only { "(review) " } else { "" }, id.name, id.holds);
    }
}
