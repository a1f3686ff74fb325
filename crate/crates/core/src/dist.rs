//! Single-cell distributions over `{0, ?, 1}`.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::params::{rat_string, to_f64, Rational};
use crate::symbol::{Symbol, SymbolSet};

/// Rows of the local update matrices. Exact by default; [`LocalDistribution::to_f64`]
/// gives the float-mode copy used for sampling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalDistribution<T = Rational> {
    pub zero: T,
    pub qmark: T,
    pub one: T,
}

impl<T> LocalDistribution<T> {
    pub fn new(zero: T, qmark: T, one: T) -> Self {
        Self { zero, qmark, one }
    }

    pub fn get(&self, s: Symbol) -> &T {
        match s {
            Symbol::Zero => &self.zero,
            Symbol::Qmark => &self.qmark,
            Symbol::One => &self.one,
        }
    }
}

impl LocalDistribution<Rational> {
    pub fn binary(zero: Rational, one: Rational) -> Self {
        Self::new(zero, Rational::zero(), one)
    }

    pub fn mass(&self, set: SymbolSet) -> Rational {
        set.iter().map(|s| self.get(s).clone()).sum()
    }

    pub fn total(&self) -> Rational {
        self.mass(SymbolSet::ALL)
    }

    pub fn is_valid(&self) -> bool {
        Symbol::ALL.iter().all(|s| !self.get(*s).is_negative()) && self.total() == Rational::from_integer(1.into())
    }

    pub fn to_f64(&self) -> LocalDistribution<f64> {
        LocalDistribution::new(to_f64(&self.zero), to_f64(&self.qmark), to_f64(&self.one))
    }
}

impl LocalDistribution<f64> {
    pub fn mass(&self, set: SymbolSet) -> f64 {
        set.iter().map(|s| *self.get(s)).sum()
    }

    pub fn is_valid(&self) -> bool {
        Symbol::ALL.iter().all(|s| *self.get(*s) >= 0.0) && (self.mass(SymbolSet::ALL) - 1.0).abs() <= 1e-12
    }
}

impl fmt::Display for LocalDistribution<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{0: {}, ?: {}, 1: {}}}", self.zero, self.qmark, self.one)
    }
}

impl Serialize for LocalDistribution<Rational> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("0", &rat_string(&self.zero))?;
        m.serialize_entry("?", &rat_string(&self.qmark))?;
        m.serialize_entry("1", &rat_string(&self.one))?;
        m.end()
    }
}
