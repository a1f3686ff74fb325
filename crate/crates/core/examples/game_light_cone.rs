//! Solves one label field by backward induction and prints the light cone,
//! W as 0, L as 1 and D as ?.

use percolation_pca::game::{ClassGrid, GameVersion};
use percolation_pca::params::Params;
use percolation_pca::stream::SeededStream;

fn main() {
    let params = Params::from_ratios((1, 5), (1, 5)).unwrap();
    let horizon = 12;
    for v in [GameVersion::V2, GameVersion::V4] {
        let grid = ClassGrid::solve(v, &params, horizon, &SeededStream::new(5)).unwrap();
        println!("{v}, origin class {:?}", grid.origin_class());
        for line in &grid.lines {
            let pad = (line.origin - grid.lines.last().unwrap().origin) as usize;
            println!("{}{}", " ".repeat(pad), line.symbols());
        }
    }
}
