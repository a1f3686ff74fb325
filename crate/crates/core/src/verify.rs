//! Batched verification suites over parameter grids and test measures,
//! shared by the command line and the acceptance tests.

use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{kernel_correspondence, GameVersion};
use crate::measures::{
    closed_form, identities, table_structure, verify_master_inequality, verify_table_inequality,
    weights, CylinderMeasure, FormulaId, Inequality, MeasureFamily, TIMeasure,
};
use crate::orders::{verify_lemma, Lemma};
use crate::params::{parse_rational, rat, rat_string, Params, Rational};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Order at which suite measures are built; every check fits in it.
pub const SUITE_ORDER: usize = 8;

/// Default seed for generated test measures.
pub const MEASURE_SEED: u64 = 20_240_601;

/// Twenty points of `S` including the edges `p = 0`, `q = 0`, `p + q = 1`.
pub const ACCEPTANCE_POINTS: [((i64, i64), (i64, i64)); 20] = [
    ((1, 5), (3, 10)),
    ((1, 3), (1, 5)),
    ((1, 4), (1, 4)),
    ((1, 10), (1, 10)),
    ((1, 100), (1, 100)),
    ((1, 2), (1, 4)),
    ((1, 7), (2, 7)),
    ((2, 5), (1, 5)),
    ((1, 20), (3, 20)),
    ((3, 10), (1, 10)),
    ((0, 1), (1, 4)),
    ((0, 1), (1, 2)),
    ((0, 1), (1, 1)),
    ((1, 4), (0, 1)),
    ((1, 2), (0, 1)),
    ((1, 1), (0, 1)),
    ((1, 3), (2, 3)),
    ((1, 2), (1, 2)),
    ((3, 4), (1, 4)),
    ((1, 10), (9, 10)),
];

/// Points used for the kernel and lemma sweeps.
pub const KERNEL_POINTS: [((i64, i64), (i64, i64)); 5] = [
    ((1, 3), (1, 5)),
    ((0, 1), (1, 1)),
    ((1, 1), (0, 1)),
    ((1, 2), (1, 2)),
    ((1, 100), (1, 100)),
];

pub const LEMMA_POINTS: [((i64, i64), (i64, i64)); 5] = [
    ((1, 5), (3, 10)),
    ((1, 2), (1, 2)),
    ((0, 1), (1, 1)),
    ((1, 1), (0, 1)),
    ((1, 100), (1, 100)),
];

fn points(list: &[((i64, i64), (i64, i64))]) -> Vec<Params> {
    list.iter()
        .map(|(p, q)| Params::from_ratios(*p, *q).expect("listed points are valid"))
        .collect()
}

/// A set of `(p, q)` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridSpec {
    /// Multiples of `1/4`.
    Coarse,
    /// Multiples of `1/20`.
    Fine,
    /// [`ACCEPTANCE_POINTS`].
    Acceptance,
    /// Multiples of the given step.
    Step(Rational),
    /// A single point.
    Point(Params),
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "coarse" => Ok(GridSpec::Coarse),
            "fine" => Ok(GridSpec::Fine),
            "acceptance" | "decimal" => Ok(GridSpec::Acceptance),
            _ => {
                let step = parse_rational(s)?;
                if !step.is_positive() || step > rat(1, 1) {
                    return Err(Error::Parse {
                        what: "grid step",
                        input: s.to_string(),
                    });
                }
                Ok(GridSpec::Step(step))
            }
        }
    }
}

impl GridSpec {
    /// Points in `S` only (`p + q > 0`), in lexicographic `(p, q)` order
    /// for step grids.
    pub fn points(&self) -> Vec<Params> {
        match self {
            GridSpec::Coarse => step_grid(&rat(1, 4)),
            GridSpec::Fine => step_grid(&rat(1, 20)),
            GridSpec::Acceptance => points(&ACCEPTANCE_POINTS),
            GridSpec::Step(s) => step_grid(s),
            GridSpec::Point(p) => vec![p.clone()],
        }
    }
}

pub fn step_grid(step: &Rational) -> Vec<Params> {
    let one = rat(1, 1);
    let mut out = Vec::new();
    let mut p = Rational::zero();
    while p <= one {
        let mut q = Rational::zero();
        while &p + &q <= one {
            if let Ok(params) = Params::new(p.clone(), q.clone()) {
                if params.in_region() {
                    out.push(params);
                }
            }
            q += step;
        }
        p += step;
    }
    out
}

/// One check in a suite, with the values needed to localise a failure.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub measure: Option<String>,
    pub params: Option<Params>,
    pub passed: bool,
    pub values: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub version: &'static str,
    pub seed: Option<u64>,
    pub checks: usize,
    pub failures: usize,
    pub passed: bool,
    /// Observations that are reported but do not decide `passed`.
    pub notes: Vec<String>,
    /// Failing checks, or every check when `full` was requested.
    pub details: Vec<CheckRecord>,
}

impl SuiteReport {
    fn new(suite: &'static str, seed: Option<u64>, records: Vec<CheckRecord>, notes: Vec<String>, full: bool) -> Self {
        let checks = records.len();
        let failures = records.iter().filter(|r| !r.passed).count();
        let details = if full {
            records
        } else {
            records.into_iter().filter(|r| !r.passed).collect()
        };
        Self {
            suite,
            version: VERSION,
            seed,
            checks,
            failures,
            passed: failures == 0,
            notes,
            details,
        }
    }
}

pub fn suite_measures(count: usize, seed: u64) -> Result<Vec<TIMeasure>> {
    MeasureFamily::sample_suite(count, seed)
        .iter()
        .map(|f| f.build(SUITE_ORDER))
        .collect()
}

pub fn kernel_suite(versions: &[GameVersion], grid: &[Params], full: bool) -> Result<SuiteReport> {
    let mut records = Vec::new();
    for v in versions {
        for params in grid {
            let rep = kernel_correspondence(*v, params)?;
            for c in &rep.comparisons {
                records.push(CheckRecord {
                    check: format!("kernel {v} {}", c.successor_classes),
                    measure: None,
                    params: Some(params.clone()),
                    passed: c.equal && rep.geometry_ok,
                    values: json!({
                        "offset": rep.offset,
                        "geometry_ok": rep.geometry_ok,
                        "induced": c.induced,
                        "envelope": c.envelope,
                    }),
                });
            }
        }
    }
    Ok(SuiteReport::new("kernel", None, records, vec![], full))
}

pub fn lemma_suite(grid: &[Params], full: bool) -> SuiteReport {
    let mut records = Vec::new();
    for params in grid {
        for lemma in [Lemma::One, Lemma::Two] {
            let rep = verify_lemma(lemma, params);
            records.push(CheckRecord {
                check: format!("lemma {lemma:?}"),
                measure: None,
                params: Some(params.clone()),
                passed: rep.passed(),
                values: json!({
                    "order": rep.order,
                    "pairs": rep.pairs,
                    "comparable": rep.comparable,
                    "incomparable": rep.incomparable,
                    "violations": rep.violations,
                    "worst_margin": rep.worst_margin,
                }),
            });
        }
    }
    SuiteReport::new("lemmas", None, records, vec![], full)
}

/// Closed forms against the pushforward, residual signs and the cylinder
/// identities, for every measure and point.
pub fn formula_suite(measures: &[TIMeasure], grid: &[Params], seed: Option<u64>, full: bool) -> Result<SuiteReport> {
    let mut records = Vec::new();
    let mut notes = Vec::new();
    for mu in measures {
        for id in identities(mu)? {
            if id.review_only {
                if !id.holds {
                    notes.push(format!(
                        "{}: identity `{}` does not hold ({} vs {})",
                        mu.descriptor(),
                        id.name,
                        rat_string(&id.lhs),
                        rat_string(&id.rhs)
                    ));
                }
                continue;
            }
            records.push(CheckRecord {
                check: format!("identity {}", id.name),
                measure: Some(mu.descriptor().to_string()),
                params: None,
                passed: id.holds,
                values: serde_json::to_value(&id).expect("serialisable"),
            });
        }
    }
    let per_point: Vec<Vec<CheckRecord>> = measures
        .par_iter()
        .map(|mu| -> Result<Vec<CheckRecord>> {
            let mut out = Vec::new();
            for params in grid {
                for id in FormulaId::ALL {
                    let e = closed_form(id, mu, params)?;
                    out.push(CheckRecord {
                        check: format!("formula {}", id.target()),
                        measure: Some(mu.descriptor().to_string()),
                        params: Some(params.clone()),
                        passed: e.passed(),
                        values: serde_json::to_value(&e).expect("serialisable"),
                    });
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    records.extend(per_point.into_iter().flatten());
    let review = notes.len();
    notes.insert(
        0,
        format!("{review} measure(s) violate the review-only identity"),
    );
    Ok(SuiteReport::new("formulas", seed, records, notes, full))
}

pub fn tables_suite(measures: &[TIMeasure], seed: Option<u64>, full: bool) -> Result<SuiteReport> {
    let mut records = Vec::new();
    for t in 1..=4 {
        let s = table_structure(t);
        records.push(CheckRecord {
            check: format!("table {t} structure"),
            measure: None,
            params: None,
            passed: s.passed(),
            values: serde_json::to_value(&s).expect("serialisable"),
        });
    }
    records.push(CheckRecord {
        check: "tables 2-4 containers disjoint".into(),
        measure: None,
        params: None,
        passed: crate::measures::tables_containers_disjoint(),
        values: Value::Null,
    });
    let mut notes = Vec::new();
    for mu in measures {
        for which in [Inequality::Ineq1, Inequality::Ineq2] {
            let c = verify_table_inequality(which, mu)?;
            if c.rhs_forms.iter().any(|f| *f != c.rhs) {
                notes.push(format!("{}: displayed forms of {which:?} disagree", mu.descriptor()));
            }
            records.push(CheckRecord {
                check: format!("{which:?}"),
                measure: Some(mu.descriptor().to_string()),
                params: None,
                passed: c.passed,
                values: serde_json::to_value(&c).expect("serialisable"),
            });
        }
    }
    Ok(SuiteReport::new("tables", seed, records, notes, full))
}

/// Weight-chain consistency and the one-step inequality for `w_4`.
pub fn weights_suite(measures: &[TIMeasure], grid: &[Params], seed: Option<u64>, full: bool) -> Result<SuiteReport> {
    let per_measure: Vec<Vec<CheckRecord>> = measures
        .par_iter()
        .map(|mu| -> Result<Vec<CheckRecord>> {
            let mut out = Vec::new();
            for params in grid {
                let w = weights(mu, params)?;
                let gap = &w.chain[3] - &w.explicit;
                let q_mu = params.q() * mu.mu("?")?;
                out.push(CheckRecord {
                    check: "weight chain".into(),
                    measure: Some(mu.descriptor().to_string()),
                    params: Some(params.clone()),
                    passed: w.explicit_is_w4() && gap == q_mu,
                    values: json!({
                        "weights": w,
                        "w3_minus_explicit": rat_string(&gap),
                        "q_mu_qmark": rat_string(&q_mu),
                    }),
                });
                let rep = verify_master_inequality(mu, params)?;
                out.push(CheckRecord {
                    check: "w4 inequality".into(),
                    measure: Some(mu.descriptor().to_string()),
                    params: Some(params.clone()),
                    passed: rep.passed && rep.negative_terms().is_empty(),
                    values: serde_json::to_value(&rep).expect("serialisable"),
                });
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let records: Vec<CheckRecord> = per_measure.into_iter().flatten().collect();
    Ok(SuiteReport::new("weights", seed, records, vec![], full))
}
