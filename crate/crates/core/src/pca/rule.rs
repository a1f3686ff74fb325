use serde::{Deserialize, Serialize};

use crate::dist::LocalDistribution;
use crate::error::{Error, Result};
use crate::params::{to_f64, Params, Rational};
use crate::symbol::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Alphabet {
    /// `{0, 1}`: the automaton `F` (offset 0) or `G` (offset -1).
    Binary,
    /// `{0, ?, 1}`: the envelope automaton.
    Envelope,
}

/// Which of the three rows of the local rule a neighbourhood triple selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NeighbourhoodClass {
    /// `(0, 0, 0)`
    AllZero,
    /// `{0,?}^3 \ {000}`
    ZeroQmark,
    /// at least one `1`
    HasOne,
}

impl NeighbourhoodClass {
    pub const ALL: [NeighbourhoodClass; 3] = [
        NeighbourhoodClass::AllZero,
        NeighbourhoodClass::ZeroQmark,
        NeighbourhoodClass::HasOne,
    ];

    #[inline]
    pub fn of(triple: [Symbol; 3]) -> Self {
        if triple.contains(&Symbol::One) {
            NeighbourhoodClass::HasOne
        } else if triple.iter().all(|s| *s == Symbol::Zero) {
            NeighbourhoodClass::AllZero
        } else {
            NeighbourhoodClass::ZeroQmark
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Row of the envelope matrix selected by a neighbourhood class.
pub fn envelope_row(params: &Params, class: NeighbourhoodClass) -> LocalDistribution {
    let one = Rational::from_integer(1.into());
    match class {
        NeighbourhoodClass::AllZero => {
            LocalDistribution::binary(params.p().clone(), one - params.p())
        }
        NeighbourhoodClass::ZeroQmark => LocalDistribution::new(
            params.p().clone(),
            params.r().clone(),
            params.q().clone(),
        ),
        NeighbourhoodClass::HasOne => {
            LocalDistribution::binary(one - params.q(), params.q().clone())
        }
    }
}

/// A member of the family with neighbourhood `{i, i+1, i+2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModelSpec {
    pub alphabet: Alphabet,
    pub offset: i64,
    pub params: Params,
}

impl ModelSpec {
    pub fn new(alphabet: Alphabet, offset: i64, params: Params) -> Self {
        Self {
            alphabet,
            offset,
            params,
        }
    }

    /// `F_{p,q}`, neighbourhood `{0, 1, 2}`.
    pub fn binary(params: Params) -> Self {
        Self::new(Alphabet::Binary, 0, params)
    }

    /// Envelope of `F_{p,q}`.
    pub fn envelope(params: Params) -> Self {
        Self::new(Alphabet::Envelope, 0, params)
    }

    pub fn with_offset(mut self, offset: i64) -> Self {
        self.offset = offset;
        self
    }

    pub fn check_symbol(&self, s: Symbol) -> Result<()> {
        if self.alphabet == Alphabet::Binary && s == Symbol::Qmark {
            Err(Error::QmarkInBinary)
        } else {
            Ok(())
        }
    }

    pub fn sampler(&self) -> Sampler {
        Sampler::new(&self.params)
    }
}

/// Exact row of the local update matrix for the given neighbourhood triple
/// (listed in increasing site order).
pub fn local_rule(model: &ModelSpec, triple: [Symbol; 3]) -> Result<LocalDistribution> {
    for s in triple {
        model.check_symbol(s)?;
    }
    Ok(envelope_row(&model.params, NeighbourhoodClass::of(triple)))
}

/// Inverse-CDF sampler with the symbol order `0 < ? < 1`.
///
/// Thresholds are cumulative sums formed exactly and rounded once, so
/// degenerate rows (`p = 1`, `q = 0`, `r = 0`) never leak mass.
#[derive(Clone, Copy, Debug)]
pub struct Sampler {
    /// per class: (P[0], P[0] + P[?])
    thresholds: [(f64, f64); 3],
}

impl Sampler {
    pub fn new(params: &Params) -> Self {
        let mut thresholds = [(0.0, 0.0); 3];
        for class in NeighbourhoodClass::ALL {
            let row = envelope_row(params, class);
            let c0 = row.zero.clone();
            let cq = &c0 + &row.qmark;
            thresholds[class.index()] = (to_f64(&c0), to_f64(&cq));
        }
        Self { thresholds }
    }

    #[inline]
    pub fn sample(&self, class: NeighbourhoodClass, u: f64) -> Symbol {
        let (c0, cq) = self.thresholds[class.index()];
        if u < c0 {
            Symbol::Zero
        } else if u < cq {
            Symbol::Qmark
        } else {
            Symbol::One
        }
    }
}
