//! The three-letter envelope alphabet, its binary sub-alphabet, symbol
//! subsets and the two orders used for stochastic domination.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Envelope symbol. The derived `Ord` is the total order `0 < ? < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Zero,
    Qmark,
    One,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::Qmark, Symbol::One];

    /// Position in the total order, also the base-3 digit used by word tables.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Symbol {
        Self::ALL[i]
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::Qmark => '?',
            Symbol::One => '1',
        }
    }

    pub fn from_char(c: char) -> Result<Symbol> {
        match c {
            '0' => Ok(Symbol::Zero),
            '?' => Ok(Symbol::Qmark),
            '1' => Ok(Symbol::One),
            _ => Err(Error::Parse {
                what: "symbol",
                input: c.to_string(),
            }),
        }
    }

    /// The partial order `0 ◁ ? ▷ 1`: `?` sits above both bits, which are incomparable.
    pub fn partial_le(self, other: Symbol) -> bool {
        self == other || other == Symbol::Qmark
    }

    pub fn is_zero_or_qmark(self) -> bool {
        self != Symbol::One
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Binary symbol of the two-letter automaton.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bit {
    Zero,
    One,
}

impl From<Bit> for Symbol {
    fn from(b: Bit) -> Symbol {
        match b {
            Bit::Zero => Symbol::Zero,
            Bit::One => Symbol::One,
        }
    }
}

impl TryFrom<Symbol> for Bit {
    type Error = Error;

    fn try_from(s: Symbol) -> Result<Bit> {
        match s {
            Symbol::Zero => Ok(Bit::Zero),
            Symbol::One => Ok(Bit::One),
            Symbol::Qmark => Err(Error::QmarkInBinary),
        }
    }
}

/// Parses a word such as `"10?"`, ignoring whitespace.
pub fn parse_word(s: &str) -> Result<Vec<Symbol>> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(Symbol::from_char)
        .collect()
}

pub fn word_string(w: &[Symbol]) -> String {
    w.iter().map(|s| s.as_char()).collect()
}

/// A subset of `{0, ?, 1}` stored as a bitmask indexed by [`Symbol::index`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolSet(u8);

impl SymbolSet {
    pub const EMPTY: SymbolSet = SymbolSet(0);
    pub const ZERO: SymbolSet = SymbolSet(0b001);
    pub const QMARK: SymbolSet = SymbolSet(0b010);
    pub const ONE: SymbolSet = SymbolSet(0b100);
    /// `{0, ?}`
    pub const ZERO_QMARK: SymbolSet = SymbolSet(0b011);
    pub const QMARK_ONE: SymbolSet = SymbolSet(0b110);
    pub const ZERO_ONE: SymbolSet = SymbolSet(0b101);
    pub const ALL: SymbolSet = SymbolSet(0b111);

    pub fn from_bits(bits: u8) -> SymbolSet {
        SymbolSet(bits & 0b111)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn single(s: Symbol) -> SymbolSet {
        SymbolSet(1 << s.index())
    }

    pub fn from_symbols<I: IntoIterator<Item = Symbol>>(it: I) -> SymbolSet {
        it.into_iter()
            .fold(SymbolSet::EMPTY, |acc, s| SymbolSet(acc.0 | 1 << s.index()))
    }

    pub fn contains(self, s: Symbol) -> bool {
        self.0 & (1 << s.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = Symbol> {
        Symbol::ALL.into_iter().filter(move |s| self.contains(*s))
    }

    /// All seven non-empty subsets.
    pub fn all_nonempty() -> impl Iterator<Item = SymbolSet> {
        (1u8..8).map(SymbolSet)
    }
}

impl fmt::Display for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() == 1 {
            let s = self.iter().next().expect("singleton");
            return write!(f, "{s}");
        }
        write!(f, "[")?;
        for s in self.iter() {
            write!(f, "{s}")?;
        }
        write!(f, "]")
    }
}

/// Order on the envelope alphabet with respect to which domination is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StochOrder {
    /// `0 ≺ ? ≺ 1`
    TotalOrder,
    /// `0 ◁ ? ▷ 1`
    PartialOrder,
}

impl StochOrder {
    pub fn le(self, a: Symbol, b: Symbol) -> bool {
        match self {
            StochOrder::TotalOrder => a <= b,
            StochOrder::PartialOrder => a.partial_le(b),
        }
    }

    /// Non-empty upper sets of the order.
    pub fn upper_sets(self) -> &'static [SymbolSet] {
        match self {
            StochOrder::TotalOrder => &[SymbolSet::ONE, SymbolSet::QMARK_ONE, SymbolSet::ALL],
            StochOrder::PartialOrder => &[
                SymbolSet::QMARK,
                SymbolSet::ZERO_QMARK,
                SymbolSet::QMARK_ONE,
                SymbolSet::ALL,
            ],
        }
    }

    /// Coordinatewise comparison of two equal-length words.
    pub fn words_le(self, u: &[Symbol], v: &[Symbol]) -> bool {
        u.len() == v.len() && u.iter().zip(v).all(|(a, b)| self.le(*a, *b))
    }
}
