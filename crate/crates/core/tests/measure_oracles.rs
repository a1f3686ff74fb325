use num_traits::{One, Zero};
use percolation_pca::measures::{
    closed_form, empirical_measure, identities, pushforward_cylinder, stationary_conclusion_check, verify_master_inequality,
    verify_table_inequality, weights, CylinderMeasure, FormulaId, Inequality, MeasureFamily, TIMeasure,
};
use percolation_pca::params::{rat, Params, Rational};
use percolation_pca::pattern::{all_words, Cell, CylinderPattern};
use percolation_pca::pca::{local_rule, trajectory, Boundary, Configuration, ModelSpec};
use percolation_pca::stream::SeededStream;
use percolation_pca::symbol::{Symbol, SymbolSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prm(p: (i64, i64), q: (i64, i64)) -> Params {
    Params::from_ratios(p, q).unwrap()
}

fn example_product(order: usize) -> TIMeasure {
    MeasureFamily::product(rat(1, 2), rat(3, 10), rat(1, 5))
        .unwrap()
        .build(order)
        .unwrap()
}

/// `F̂μ(pat)` summed site by site: every preimage word of length `span + 2`,
/// every output word in the pattern, product of the local rule rows.
fn brute_force_pushforward(mu: &TIMeasure, pat: &CylinderPattern, params: &Params) -> Rational {
    let s = pat.span();
    let model = ModelSpec::envelope(params.clone());
    let outputs: Vec<Vec<Symbol>> = all_words(s).filter(|o| pat.contains(o).unwrap()).collect();
    let mut total = Rational::zero();
    for w in all_words(s + 2) {
        let weight = mu.word_prob(&w).unwrap();
        if weight.is_zero() {
            continue;
        }
        let rows: Vec<_> = (0..s)
            .map(|j| local_rule(&model, [w[j], w[j + 1], w[j + 2]]).unwrap())
            .collect();
        let mut inner = Rational::zero();
        for o in &outputs {
            let mut prod = Rational::one();
            for (j, sym) in o.iter().enumerate() {
                prod *= rows[j].get(*sym);
            }
            inner += prod;
        }
        total += weight * inner;
    }
    total
}

#[test]
fn product_measure_examples() {
    let mu = example_product(6);
    assert_eq!(mu.mu("?").unwrap(), rat(3, 10));
    assert_eq!(mu.mu("***").unwrap(), rat(387, 1000));
    assert_eq!(mu.mu("[0?1]").unwrap(), rat(1, 1));
    let params = prm((1, 5), (3, 10));
    assert_eq!(pushforward_cylinder(&mu, &"?".parse().unwrap(), &params).unwrap(), rat(387, 2000));
    assert_eq!(pushforward_cylinder(&mu, &"0?".parse().unwrap(), &params).unwrap(), rat(2322, 40000));
    let zero = MeasureFamily::PointMass(Symbol::Zero).build(4).unwrap();
    assert!(pushforward_cylinder(&zero, &"?".parse().unwrap(), &params).unwrap().is_zero());
}

#[test]
fn pushforward_of_qmark_is_r_times_hat3() {
    let suite = MeasureFamily::sample_suite(5, 3);
    for fam in &suite {
        let mu = fam.build(5).unwrap();
        for (p, q) in [((1, 5), (3, 10)), ((0, 1), (1, 2)), ((1, 3), (0, 1)), ((1, 2), (1, 2))] {
            let params = prm(p, q);
            let pf = pushforward_cylinder(&mu, &"?".parse().unwrap(), &params).unwrap();
            assert_eq!(pf, params.r() * mu.mu("***").unwrap());
        }
    }
}

#[test]
fn fully_specified_closed_forms_match_brute_force() {
    let suite = MeasureFamily::sample_suite(3, 99);
    for fam in &suite {
        let mu = fam.build(6).unwrap();
        for (p, q) in [((1, 5), (3, 10)), ((0, 1), (1, 1)), ((1, 1), (0, 1)), ((2, 7), (0, 1))] {
            let params = prm(p, q);
            for id in FormulaId::ALL.into_iter().filter(|id| id.fully_specified()) {
                let e = closed_form(id, &mu, &params).unwrap();
                let target: CylinderPattern = id.target().parse().unwrap();
                assert_eq!(e.pushforward, brute_force_pushforward(&mu, &target, &params), "{id:?}");
                assert!(e.passed(), "{e:?}");
            }
        }
    }
}

#[test]
fn weight_examples() {
    let params = prm((1, 5), (3, 10));
    let mu = example_product(6);
    let w = weights(&mu, &params).unwrap();
    assert_eq!(w.chain[0], rat(117, 200));
    assert_eq!(w.chain[4], &w.chain[3] - params.q() * rat(3, 10));
    assert!(w.explicit_is_w4());
    let all_q = MeasureFamily::PointMass(Symbol::Qmark).build(6).unwrap();
    assert_eq!(weights(&all_q, &params).unwrap().chain[0], rat(1, 1));
}

#[test]
fn master_inequality_examples() {
    let params = prm((1, 5), (3, 10));
    let zero = MeasureFamily::PointMass(Symbol::Zero).build(8).unwrap();
    let rep = verify_master_inequality(&zero, &params).unwrap();
    assert!(rep.passed && rep.slack.is_zero());
    assert!(rep.weights.chain[4].is_zero() && rep.image_weights.chain[4].is_zero());

    let one = MeasureFamily::PointMass(Symbol::One).build(8).unwrap();
    let rep = verify_master_inequality(&one, &params).unwrap();
    assert!(rep.passed);
    assert!(rep.weights.chain[4].is_zero());

    let rep = verify_master_inequality(&example_product(8), &params).unwrap();
    assert!(rep.passed, "{:?}", rep.negative_terms());
}

#[test]
fn table_examples() {
    let zero = MeasureFamily::PointMass(Symbol::Zero).build(6).unwrap();
    let c = verify_table_inequality(Inequality::Ineq1, &zero).unwrap();
    assert!(c.passed && c.lhs.is_zero() && c.rhs.is_zero() && c.slack.is_zero());
    let c = verify_table_inequality(Inequality::Ineq1, &example_product(6)).unwrap();
    assert!(c.passed);
}

#[test]
fn cylinder_identities_hold_on_sampled_measures() {
    for fam in MeasureFamily::sample_suite(10, 5) {
        let mu = fam.build(8).unwrap();
        for id in identities(&mu).unwrap() {
            assert!(id.holds || id.review_only, "{} on {}", id.name, mu.descriptor());
        }
    }
}

#[test]
fn iid_row_recovers_product_marginal() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let cells: Vec<Symbol> = (0..1_000_000)
        .map(|_| {
            let u: f64 = rng.gen();
            if u < 0.5 {
                Symbol::Zero
            } else if u < 0.8 {
                Symbol::Qmark
            } else {
                Symbol::One
            }
        })
        .collect();
    let row = Configuration::new(cells, Boundary::Cyclic).unwrap();
    let m = empirical_measure(&row, 1).unwrap();
    assert!((m.mu("?").unwrap() - 0.3).abs() < 0.002);
}

#[test]
fn q_zero_forced_cylinders_shrink_with_time() {
    let params = prm((1, 10), (0, 1));
    let init = Configuration::uniform(Symbol::Qmark, 10_000, Boundary::Cyclic).unwrap();
    let model = ModelSpec::envelope(params.clone());
    let at = |steps| {
        let tr = trajectory(&init, &model, steps, &SeededStream::new(8)).unwrap();
        stationary_conclusion_check(&params, &empirical_measure(&tr.last, 5).unwrap()).unwrap()
    };
    // both rise at first, since 1s only appear after a 000 block, then decay
    let (early, late) = (at(400), at(4000));
    assert!(late.mu_10q < early.mu_10q, "{} {}", early.mu_10q, late.mu_10q);
    assert!(late.mu_000q < early.mu_000q, "{} {}", early.mu_000q, late.mu_000q);
}

fn set_strategy() -> impl Strategy<Value = Cell> {
    (1u8..8).prop_map(|b| Cell::Set(SymbolSet::from_bits(b)))
}

fn cell_strategy() -> impl Strategy<Value = Cell> {
    prop_oneof![4 => set_strategy(), 1 => Just(Cell::Hat2), 1 => Just(Cell::Hat3)]
}

fn pattern_strategy(max_span: usize) -> impl Strategy<Value = CylinderPattern> {
    prop::collection::vec(cell_strategy(), 1..=max_span)
        .prop_filter_map("span too large", move |cells| {
            let p = CylinderPattern::new(cells).ok()?;
            (p.span() <= max_span).then_some(p)
        })
}

fn measure_strategy() -> impl Strategy<Value = MeasureFamily> {
    (any::<u64>(), any::<bool>()).prop_map(|(seed, markov)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        if markov {
            MeasureFamily::random_reversible_markov(&mut rng)
        } else {
            MeasureFamily::random_product(&mut rng)
        }
    })
}

fn params_strategy() -> impl Strategy<Value = Params> {
    (0i64..=20, 0i64..=20)
        .prop_filter("p + q <= 1", |(a, b)| a + b <= 20)
        .prop_map(|(a, b)| prm((a, 20), (b, 20)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pushforward_matches_brute_force(fam in measure_strategy(), pat in pattern_strategy(4), params in params_strategy()) {
        let mu = fam.build(6).unwrap();
        prop_assert_eq!(
            pushforward_cylinder(&mu, &pat, &params).unwrap(),
            brute_force_pushforward(&mu, &pat, &params)
        );
    }

    #[test]
    fn constructed_measures_are_consistent(fam in measure_strategy()) {
        let mu = fam.build(6).unwrap();
        prop_assert!(mu.translation_consistent());
        prop_assert!(mu.reflection_invariant());
        let total: Rational = all_words(4).map(|w| mu.word_prob(&w).unwrap()).sum();
        prop_assert_eq!(total, Rational::one());
        prop_assert_eq!(mu.mu("[0?1][0?1]").unwrap(), Rational::one());
    }

    #[test]
    fn cylinder_probability_is_reflection_symmetric(fam in measure_strategy(), pat in pattern_strategy(5)) {
        let mu = fam.build(6).unwrap();
        prop_assert_eq!(mu.cylinder_prob(&pat).unwrap(), mu.cylinder_prob(&pat.reversed()).unwrap());
    }
}
