//! One game step integrated over the label of a single site equals one
//! envelope update, for every successor-class triple.

use percolation_pca::game::{kernel_correspondence, GameVersion};
use percolation_pca::params::Params;

fn main() {
    let params = Params::from_ratios((1, 3), (1, 5)).unwrap();
    for v in GameVersion::ALL {
        let rep = kernel_correspondence(v, &params).unwrap();
        println!("{v} (offset {:>2}): {}/27 exact matches", rep.offset, rep.matches);
        if v == GameVersion::V1 {
            for c in rep.comparisons.iter().take(4) {
                println!("    {}  induced {}  envelope {}", c.successor_classes, c.induced, c.envelope);
            }
        }
    }
}
