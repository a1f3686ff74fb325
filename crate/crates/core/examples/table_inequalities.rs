use percolation_pca::measures::{table_structure, verify_table_inequality, Inequality, MeasureFamily};
use percolation_pca::params::rat_string;

fn main() {
    for t in 1..=4 {
        let s = table_structure(t);
        println!("table {t}: {} rows, overlaps {:?}, escapes {:?}", s.rows, s.overlaps, s.escapes);
    }
    for family in MeasureFamily::sample_suite(3, 11) {
        let mu = family.build(6).unwrap();
        for which in [Inequality::Ineq1, Inequality::Ineq2] {
            let c = verify_table_inequality(which, &mu).unwrap();
            println!("{} {which:?}: slack {}", mu.descriptor(), rat_string(&c.slack));
        }
    }
}
