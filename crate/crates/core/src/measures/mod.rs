//! Exact cylinder probabilities of translation-invariant measures on
//! `{0, ?, 1}^Z`, their one-step pushforward under the envelope automaton,
//! and the weight-function machinery built on top of them.
//!
//! A [`TIMeasure`] stores integer numerators over one common denominator for
//! every word of length `0..=order`. Shorter tables are marginals of the
//! longest one (rightmost symbol summed out).

mod empirical;
mod formulas;
mod pushforward;
mod tables;
mod weights;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

pub use empirical::{
    empirical_measure, stationary_conclusion_check, ApproxMeasure, EmpiricalMeasure, StationaryReport,
};
pub use formulas::{closed_form, identities, FormulaEval, FormulaId, IdentityCheck, Named};
pub use pushforward::{pushforward_cylinder, Pushforward};
pub use tables::{
    table, table_structure, tables_containers_disjoint, verify_table_inequality, Inequality, TableCheck,
    TableRow, TableStructure, TABLE_1, TABLE_2, TABLE_3, TABLE_4,
};
pub use weights::{
    explicit_final_weight, verify_master_inequality, weight, weights, WeightReport, Weights,
};

use crate::error::{Error, Result};
use crate::params::{rat_string, Rational};
use crate::pattern::CylinderPattern;
use crate::symbol::Symbol;

pub const MAX_ORDER: usize = 10;

/// Anything that assigns exact probabilities to cylinder patterns.
pub trait CylinderMeasure {
    fn cylinder_prob(&self, pat: &CylinderPattern) -> Result<Rational>;

    /// Shorthand for a pattern written in the usual notation, e.g. `"1[0?]***"`.
    fn mu(&self, pat: &str) -> Result<Rational> {
        self.cylinder_prob(&pat.parse()?)
    }
}

#[derive(Clone, Debug)]
pub struct TIMeasure {
    order: usize,
    denom: BigInt,
    tables: Vec<Vec<BigInt>>,
    descriptor: String,
    translation_consistent: bool,
    reflection_invariant: bool,
    class_masses: Vec<OnceLock<Vec<BigInt>>>,
}

fn pow3(n: usize) -> usize {
    3usize.pow(n as u32)
}

fn reverse_index(mut i: usize, len: usize) -> usize {
    let mut r = 0;
    for _ in 0..len {
        r = r * 3 + i % 3;
        i /= 3;
    }
    r
}

impl TIMeasure {
    /// Builds a measure from exact probabilities of all `3^order` words
    /// (indexed base 3, first symbol most significant, `0 < ? < 1`).
    pub fn from_table(order: usize, probs: &[Rational], descriptor: impl Into<String>) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderExceeded {
                needed: order,
                order: MAX_ORDER,
            });
        }
        if probs.len() != pow3(order) {
            return Err(Error::InvalidMeasure(format!(
                "expected {} entries, got {}",
                pow3(order),
                probs.len()
            )));
        }
        let denom = probs
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let top = probs
            .iter()
            .map(|x| x.numer() * (&denom / x.denom()))
            .collect();
        Self::from_top(order, denom, top, descriptor.into())
    }

    fn from_top(order: usize, denom: BigInt, top: Vec<BigInt>, descriptor: String) -> Result<Self> {
        if top.iter().any(|x| x.is_negative()) {
            return Err(Error::InvalidMeasure("negative word probability".into()));
        }
        let total: BigInt = top.iter().sum();
        if total != denom {
            return Err(Error::InvalidMeasure(format!(
                "word probabilities sum to {}",
                rat_string(&Rational::new(total, denom))
            )));
        }
        let mut tables = vec![top];
        for l in (0..order).rev() {
            let longer = tables.last().unwrap();
            let t: Vec<BigInt> = (0..pow3(l))
                .map(|w| &longer[3 * w] + &longer[3 * w + 1] + &longer[3 * w + 2])
                .collect();
            tables.push(t);
        }
        tables.reverse();
        let translation_consistent = (0..order).all(|l| {
            let n = pow3(l);
            (0..n).all(|w| {
                let left = &tables[l + 1][w] + &tables[l + 1][n + w] + &tables[l + 1][2 * n + w];
                left == tables[l][w]
            })
        });
        let reflection_invariant = (0..=order).all(|l| {
            (0..pow3(l)).all(|w| tables[l][w] == tables[l][reverse_index(w, l)])
        });
        Ok(Self {
            order,
            denom,
            tables,
            descriptor,
            translation_consistent,
            reflection_invariant,
            class_masses: (0..=order).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Markov-chain style construction: `μ(a_1…a_n) ∝ init[a_1] Π trans[a_j][a_{j+1}]`
    /// with all weights integers over `init_den` and `trans_den`.
    fn from_chain(
        order: usize,
        init: [BigInt; 3],
        init_den: BigInt,
        trans: [[BigInt; 3]; 3],
        trans_den: BigInt,
        descriptor: String,
    ) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderExceeded {
                needed: order,
                order: MAX_ORDER,
            });
        }
        if order == 0 {
            return Self::from_top(0, BigInt::one(), vec![BigInt::one()], descriptor);
        }
        let mut cur: Vec<BigInt> = init.to_vec();
        for _ in 1..order {
            let mut next = Vec::with_capacity(cur.len() * 3);
            for (w, x) in cur.iter().enumerate() {
                let last = w % 3;
                for b in 0..3 {
                    next.push(x * &trans[last][b]);
                }
            }
            cur = next;
        }
        let denom = init_den * num_traits::pow(trans_den, order - 1);
        Self::from_top(order, denom, cur, descriptor)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn translation_consistent(&self) -> bool {
        self.translation_consistent
    }

    pub fn reflection_invariant(&self) -> bool {
        self.reflection_invariant
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// Exact probability of a word of length `≤ order`.
    pub fn word_prob(&self, w: &[Symbol]) -> Result<Rational> {
        self.check_span(w.len())?;
        let i = crate::pattern::word_to_index(w);
        Ok(Rational::new(self.tables[w.len()][i].clone(), self.denom.clone()))
    }

    pub(crate) fn check_span(&self, needed: usize) -> Result<()> {
        if needed > self.order {
            Err(Error::OrderExceeded {
                needed,
                order: self.order,
            })
        } else {
            Ok(())
        }
    }

    pub fn require_reflection_invariant(&self) -> Result<()> {
        if self.reflection_invariant && self.translation_consistent {
            Ok(())
        } else {
            Err(Error::NotReflectionInvariant)
        }
    }

    /// Numerator (over [`Self::denominator`]) of a cylinder probability.
    pub(crate) fn cylinder_numerator(&self, pat: &CylinderPattern) -> Result<BigInt> {
        let span = pat.span();
        self.check_span(span)?;
        let table = &self.tables[span];
        let mut total = BigInt::zero();
        for plain in pat.expand() {
            let mut idx = vec![0usize];
            for set in &plain {
                idx = idx
                    .iter()
                    .flat_map(|i| set.iter().map(move |s| i * 3 + s.index()))
                    .collect();
            }
            for i in idx {
                total += &table[i];
            }
        }
        Ok(total)
    }

    /// Masses of class sequences of preimage windows of length `s + 2`.
    pub(crate) fn class_masses(&self, s: usize) -> Result<&[BigInt]> {
        self.check_span(s + 2)?;
        Ok(self.class_masses[s].get_or_init(|| {
            let table = &self.tables[s + 2];
            let mut out = vec![BigInt::zero(); pow3(s)];
            let mut digits = vec![0usize; s + 2];
            for (w, mass) in table.iter().enumerate() {
                if mass.is_zero() {
                    continue;
                }
                let mut x = w;
                for d in digits.iter_mut().rev() {
                    *d = x % 3;
                    x /= 3;
                }
                let mut c = 0;
                for j in 0..s {
                    c = c * 3 + class_of_digits(digits[j], digits[j + 1], digits[j + 2]);
                }
                out[c] += mass;
            }
            out
        }))
    }
}

/// Class index (`000` → 0, `{0,?}^3` otherwise → 1, any `1` → 2) of a
/// triple of symbol indices.
#[inline]
fn class_of_digits(a: usize, b: usize, c: usize) -> usize {
    if a == 2 || b == 2 || c == 2 {
        2
    } else if a == 0 && b == 0 && c == 0 {
        0
    } else {
        1
    }
}

impl CylinderMeasure for TIMeasure {
    fn cylinder_prob(&self, pat: &CylinderPattern) -> Result<Rational> {
        Ok(Rational::new(self.cylinder_numerator(pat)?, self.denom.clone()))
    }
}

impl fmt::Display for TIMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.descriptor, self.order)
    }
}

/// Test-measure generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasureFamily {
    /// i.i.d. sites with marginal `(p0, p?, p1)`.
    Product([Rational; 3]),
    /// Stationary reversible Markov chain `π(a_1) Π K(a_j, a_{j+1})`.
    ReversibleMarkov { pi: [Rational; 3], k: [[Rational; 3]; 3] },
    /// All sites equal to one symbol.
    PointMass(Symbol),
}

impl Serialize for MeasureFamily {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.descriptor())
    }
}

fn common_den(xs: &[&Rational]) -> BigInt {
    xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn scaled(x: &Rational, d: &BigInt) -> BigInt {
    x.numer() * (d / x.denom())
}

impl MeasureFamily {
    pub fn product(p0: Rational, pq: Rational, p1: Rational) -> Result<Self> {
        let m = MeasureFamily::Product([p0, pq, p1]);
        m.validate()?;
        Ok(m)
    }

    pub fn reversible_markov(pi: [Rational; 3], k: [[Rational; 3]; 3]) -> Result<Self> {
        let m = MeasureFamily::ReversibleMarkov { pi, k };
        m.validate()?;
        Ok(m)
    }

    /// Chain of the symmetric edge-weight matrix `s`: `π(a) ∝ Σ_b s[a][b]`,
    /// `K(a, b) = s[a][b] / Σ_b s[a][b]`. Rows with no weight stay put.
    pub fn from_symmetric(s: [[u32; 3]; 3]) -> Result<Self> {
        for a in 0..3 {
            for b in 0..3 {
                if s[a][b] != s[b][a] {
                    return Err(Error::InvalidMeasure("edge weights not symmetric".into()));
                }
            }
        }
        let rows: Vec<i64> = s.iter().map(|r| r.iter().map(|x| *x as i64).sum()).collect();
        let total: i64 = rows.iter().sum();
        if total == 0 {
            return Err(Error::InvalidMeasure("all edge weights are zero".into()));
        }
        let pi = [0, 1, 2].map(|a| Rational::new(rows[a].into(), total.into()));
        let k = [0, 1, 2].map(|a| {
            [0, 1, 2].map(|b| {
                if rows[a] == 0 {
                    Rational::from_integer(BigInt::from((a == b) as i64))
                } else {
                    Rational::new((s[a][b] as i64).into(), rows[a].into())
                }
            })
        });
        Self::reversible_markov(pi, k)
    }

    fn validate(&self) -> Result<()> {
        let one = Rational::one();
        let is_dist = |d: &[Rational; 3]| {
            d.iter().all(|x| !x.is_negative()) && d.iter().sum::<Rational>() == one
        };
        match self {
            MeasureFamily::Product(d) => {
                if !is_dist(d) {
                    return Err(Error::InvalidMeasure("product marginal is not a distribution".into()));
                }
            }
            MeasureFamily::ReversibleMarkov { pi, k } => {
                if !is_dist(pi) || !k.iter().all(is_dist) {
                    return Err(Error::InvalidMeasure("π or a row of K is not a distribution".into()));
                }
                for a in 0..3 {
                    for b in 0..3 {
                        if &pi[a] * &k[a][b] != &pi[b] * &k[b][a] {
                            return Err(Error::InvalidMeasure("detailed balance fails".into()));
                        }
                    }
                }
            }
            MeasureFamily::PointMass(_) => {}
        }
        Ok(())
    }

    pub fn descriptor(&self) -> String {
        let r = rat_string;
        match self {
            MeasureFamily::Product([a, b, c]) => format!("Product({},{},{})", r(a), r(b), r(c)),
            MeasureFamily::ReversibleMarkov { pi, k } => format!(
                "ReversibleMarkov(pi=[{}],K=[{}])",
                pi.iter().map(r).collect::<Vec<_>>().join(","),
                k.iter()
                    .map(|row| format!("[{}]", row.iter().map(r).collect::<Vec<_>>().join(",")))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            MeasureFamily::PointMass(s) => format!("PointMass({s})"),
        }
    }

    pub fn build(&self, order: usize) -> Result<TIMeasure> {
        self.validate()?;
        let desc = self.descriptor();
        match self {
            MeasureFamily::Product(d) => {
                let den = common_den(&[&d[0], &d[1], &d[2]]);
                let a = [0, 1, 2].map(|i| scaled(&d[i], &den));
                let trans = [a.clone(), a.clone(), a.clone()];
                TIMeasure::from_chain(order, a, den.clone(), trans, den, desc)
            }
            MeasureFamily::ReversibleMarkov { pi, k } => {
                let dpi = common_den(&[&pi[0], &pi[1], &pi[2]]);
                let dk = common_den(&k.iter().flatten().collect::<Vec<_>>());
                let init = [0, 1, 2].map(|i| scaled(&pi[i], &dpi));
                let trans = [0, 1, 2].map(|a| [0, 1, 2].map(|b| scaled(&k[a][b], &dk)));
                TIMeasure::from_chain(order, init, dpi, trans, dk, desc)
            }
            MeasureFamily::PointMass(s) => {
                let delta = |i: usize| BigInt::from((i == s.index()) as i64);
                let init = [0, 1, 2].map(delta);
                let trans = [0, 1, 2].map(|_| [0, 1, 2].map(delta));
                TIMeasure::from_chain(order, init, BigInt::one(), trans, BigInt::one(), desc)
            }
        }
    }

    /// Random product measure with denominator at most 64 and `p? > 0`.
    pub fn random_product<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let d: i64 = rng.gen_range(2..=64);
        let a = rng.gen_range(0..d);
        let b = rng.gen_range(1..=d - a);
        let c = d - a - b;
        MeasureFamily::Product([a, b, c].map(|x| Rational::new(x.into(), d.into())))
    }

    /// Random reversible chain from symmetric integer edge weights with
    /// total mass at most 64 and some weight on `?`.
    pub fn random_reversible_markov<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let mut s = [[0u32; 3]; 3];
            for a in 0..3 {
                for b in a..3 {
                    let x = rng.gen_range(0..=7);
                    s[a][b] = x;
                    s[b][a] = x;
                }
            }
            if s[1].iter().sum::<u32>() > 0 {
                return Self::from_symmetric(s).expect("symmetric weights with mass");
            }
        }
    }

    /// `count` product measures followed by `count` reversible chains,
    /// reproducible from `seed`.
    pub fn sample_suite(count: usize, seed: u64) -> Vec<Self> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<Self> = (0..count).map(|_| Self::random_product(&mut rng)).collect();
        out.extend((0..count).map(|_| Self::random_reversible_markov(&mut rng)));
        out
    }
}
