use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::{word_string, Bit, Symbol};

/// How a finite row stands in for the bi-infinite line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Boundary {
    /// Indices wrap modulo the width; width is constant in time.
    Cyclic,
    /// The row shrinks by two sites per step so every surviving cell agrees
    /// with the dynamics on the whole line.
    LightCone,
}

/// A finite row of sites. `origin` is the absolute lattice index of
/// `cells[0]`; randomness is keyed by absolute index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    cells: Vec<Symbol>,
    boundary: Boundary,
    origin: i64,
}

impl Configuration {
    pub fn new(cells: Vec<Symbol>, boundary: Boundary) -> Result<Self> {
        Self::with_origin(cells, boundary, 0)
    }

    pub fn with_origin(cells: Vec<Symbol>, boundary: Boundary, origin: i64) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Incompatible("empty configuration".into()));
        }
        Ok(Self {
            cells,
            boundary,
            origin,
        })
    }

    pub fn uniform(s: Symbol, width: usize, boundary: Boundary) -> Result<Self> {
        Self::new(vec![s; width], boundary)
    }

    pub fn from_bits(bits: &[Bit], boundary: Boundary) -> Result<Self> {
        Self::new(bits.iter().map(|b| Symbol::from(*b)).collect(), boundary)
    }

    pub fn parse(s: &str, boundary: Boundary) -> Result<Self> {
        Self::new(crate::symbol::parse_word(s)?, boundary)
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn width(&self) -> usize {
        self.cells.len()
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn origin(&self) -> i64 {
        self.origin
    }

    pub fn is_binary(&self) -> bool {
        !self.cells.contains(&Symbol::Qmark)
    }

    /// Counts of `0`, `?`, `1`.
    pub fn counts(&self) -> [usize; 3] {
        let mut c = [0usize; 3];
        for s in &self.cells {
            c[s.index()] += 1;
        }
        c
    }

    /// Value at absolute lattice index `n`, if it lies in the window
    /// (always, for cyclic rows).
    pub fn at(&self, n: i64) -> Option<Symbol> {
        let w = self.width() as i64;
        let k = n - self.origin;
        match self.boundary {
            Boundary::Cyclic => Some(self.cells[k.rem_euclid(w) as usize]),
            Boundary::LightCone => (0..w).contains(&k).then(|| self.cells[k as usize]),
        }
    }

    /// The sub-window `[from, from + len)` in absolute indices, as a light-cone row.
    pub fn restrict(&self, from: i64, len: usize) -> Option<Configuration> {
        let cells = (0..len as i64)
            .map(|k| self.at(from + k))
            .collect::<Option<Vec<_>>>()?;
        Configuration::with_origin(cells, Boundary::LightCone, from).ok()
    }

    pub(crate) fn from_parts(cells: Vec<Symbol>, boundary: Boundary, origin: i64) -> Self {
        Self {
            cells,
            boundary,
            origin,
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", word_string(&self.cells))
    }
}
