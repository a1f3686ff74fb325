//! Stochastic domination of one-site laws and the two monotonicity lemmas
//! for the envelope rule.
//!
//! Lemma 1: if `u ⪯ v` coordinatewise in the total order `0 ≺ ? ≺ 1`, then
//! the law of the update at `v` is dominated by the one at `u` (the rule is
//! order reversing). Lemma 2: if `u ⊴ v` in the partial order `0 ◁ ? ▷ 1`,
//! then the update at `u` is dominated by the one at `v`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::dist::LocalDistribution;
use crate::params::{rat_string, serialize_rational, Params, Rational};
use crate::pattern::all_words;
use crate::pca::{local_rule, ModelSpec};
use crate::symbol::{word_string, StochOrder, Symbol, SymbolSet};

#[derive(Clone, Debug, Serialize)]
pub struct Margin {
    pub upper_set: String,
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct DominationCheck {
    pub order: StochOrder,
    pub lhs: LocalDistribution,
    pub rhs: LocalDistribution,
    /// `rhs(U) - lhs(U)` for every non-empty upper set `U`.
    pub margins: Vec<Margin>,
    pub holds: bool,
}

impl DominationCheck {
    pub fn worst_margin(&self) -> Rational {
        self.margins
            .iter()
            .map(|m| m.value.clone())
            .min()
            .unwrap_or_else(Rational::zero)
    }
}

/// Decides `d1 ⪯ d2` in the given order.
pub fn dominates(order: StochOrder, d1: &LocalDistribution, d2: &LocalDistribution) -> DominationCheck {
    let margins: Vec<Margin> = order
        .upper_sets()
        .iter()
        .map(|u: &SymbolSet| Margin {
            upper_set: u.to_string(),
            value: d2.mass(*u) - d1.mass(*u),
        })
        .collect();
    let holds = margins.iter().all(|m| !m.value.is_negative());
    DominationCheck {
        order,
        lhs: d1.clone(),
        rhs: d2.clone(),
        margins,
        holds,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Lemma {
    One,
    Two,
}

impl Lemma {
    pub fn order(self) -> StochOrder {
        match self {
            Lemma::One => StochOrder::TotalOrder,
            Lemma::Two => StochOrder::PartialOrder,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairResult {
    pub u: String,
    pub v: String,
    #[serde(serialize_with = "serialize_rational")]
    pub worst_margin: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub lemma: Lemma,
    pub order: StochOrder,
    pub params: Params,
    pub pairs: usize,
    pub comparable: usize,
    pub incomparable: usize,
    pub violations: usize,
    pub worst_margin: String,
    pub comparisons: Vec<PairResult>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.pairs == 729
    }
}

/// Checks the lemma on every ordered pair of neighbourhood triples.
pub fn verify_lemma(which: Lemma, params: &Params) -> LemmaReport {
    let order = which.order();
    let model = ModelSpec::envelope(params.clone());
    let triples: Vec<[Symbol; 3]> = all_words(3).map(|w| [w[0], w[1], w[2]]).collect();
    let laws: Vec<LocalDistribution> = triples
        .iter()
        .map(|t| local_rule(&model, *t).expect("envelope accepts every triple"))
        .collect();
    let mut comparisons = Vec::new();
    let mut pairs = 0;
    for (i, u) in triples.iter().enumerate() {
        for (j, v) in triples.iter().enumerate() {
            pairs += 1;
            if !order.words_le(u, v) {
                continue;
            }
            let check = match which {
                Lemma::One => dominates(order, &laws[j], &laws[i]),
                Lemma::Two => dominates(order, &laws[i], &laws[j]),
            };
            comparisons.push(PairResult {
                u: word_string(u),
                v: word_string(v),
                worst_margin: check.worst_margin(),
                holds: check.holds,
            });
        }
    }
    let violations = comparisons.iter().filter(|c| !c.holds).count();
    let worst = comparisons
        .iter()
        .map(|c| c.worst_margin.clone())
        .min()
        .unwrap_or_else(Rational::zero);
    LemmaReport {
        lemma: which,
        order,
        params: params.clone(),
        pairs,
        comparable: comparisons.len(),
        incomparable: pairs - comparisons.len(),
        violations,
        worst_margin: rat_string(&worst),
        comparisons,
    }
}
