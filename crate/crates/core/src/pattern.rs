//! Cylinder events on contiguous windows.
//!
//! A pattern is a run of cells; each cell is a non-empty subset of `{0, ?, 1}`
//! or one of the two shorthand tokens
//!
//! * `**`  = `{0,?}^2 \ {00}` (two sites)
//! * `***` = `{0,?}^3 \ {000}` (three sites)
//!
//! Text syntax: cells `0`, `?`, `1`, a bracketed subset such as `[0?]`, `**`
//! or `***`, optionally separated by whitespace (`1[0?]***` is three cells).
//! Adjacent star tokens must be separated: `*** ***`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::symbol::{Symbol, SymbolSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Set(SymbolSet),
    Hat2,
    Hat3,
}

impl Cell {
    pub fn width(self) -> usize {
        match self {
            Cell::Set(_) => 1,
            Cell::Hat2 => 2,
            Cell::Hat3 => 3,
        }
    }

    /// Disjoint plain decompositions of the cell.
    fn pieces(self) -> Vec<Vec<SymbolSet>> {
        use SymbolSet as S;
        match self {
            Cell::Set(s) => vec![vec![s]],
            // {0,?}^2 \ 00 = ?[0?] ∪ 0?
            Cell::Hat2 => vec![vec![S::QMARK, S::ZERO_QMARK], vec![S::ZERO, S::QMARK]],
            // {0,?}^3 \ 000 = ?[0?][0?] ∪ 0?[0?] ∪ 00?
            Cell::Hat3 => vec![
                vec![S::QMARK, S::ZERO_QMARK, S::ZERO_QMARK],
                vec![S::ZERO, S::QMARK, S::ZERO_QMARK],
                vec![S::ZERO, S::ZERO, S::QMARK],
            ],
        }
    }

    fn matches(self, w: &[Symbol]) -> bool {
        match self {
            Cell::Set(s) => s.contains(w[0]),
            Cell::Hat2 | Cell::Hat3 => {
                w.iter().all(|s| s.is_zero_or_qmark()) && w.iter().any(|s| *s == Symbol::Qmark)
            }
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Set(s) => write!(f, "{s}"),
            Cell::Hat2 => write!(f, "**"),
            Cell::Hat3 => write!(f, "***"),
        }
    }
}

/// A plain pattern: one subset per site.
pub type PlainPattern = Vec<SymbolSet>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CylinderPattern {
    cells: Vec<Cell>,
}

impl CylinderPattern {
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::MalformedPattern("empty pattern".into()));
        }
        if cells
            .iter()
            .any(|c| matches!(c, Cell::Set(s) if s.is_empty()))
        {
            return Err(Error::MalformedPattern("empty subset cell".into()));
        }
        Ok(Self { cells })
    }

    /// Shorthand for patterns known to be well formed, e.g. `pat("1 [0?] ***")`.
    ///
    /// Panics on malformed input.
    pub fn lit(s: &str) -> Self {
        s.parse().unwrap_or_else(|e| panic!("bad pattern literal {s:?}: {e}"))
    }

    pub fn from_word(w: &[Symbol]) -> Self {
        Self {
            cells: w.iter().map(|s| Cell::Set(SymbolSet::single(*s))).collect(),
        }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn span(&self) -> usize {
        self.cells.iter().map(|c| c.width()).sum()
    }

    /// Pairwise-disjoint plain patterns whose union is this event.
    pub fn expand(&self) -> Vec<PlainPattern> {
        let mut acc: Vec<PlainPattern> = vec![Vec::with_capacity(self.span())];
        for cell in &self.cells {
            let pieces = cell.pieces();
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    pieces.iter().map(move |piece| {
                        let mut v = prefix.clone();
                        v.extend_from_slice(piece);
                        v
                    })
                })
                .collect();
        }
        acc
    }

    /// Number of words of length `span` in the event.
    pub fn cardinality(&self) -> usize {
        self.expand()
            .iter()
            .map(|p| p.iter().map(|s| s.len()).product::<usize>())
            .sum()
    }

    pub fn contains(&self, word: &[Symbol]) -> Result<bool> {
        let span = self.span();
        if word.len() != span {
            return Err(Error::LengthMismatch {
                word: word.len(),
                span,
            });
        }
        let mut at = 0;
        for cell in &self.cells {
            let w = cell.width();
            if !cell.matches(&word[at..at + w]) {
                return Ok(false);
            }
            at += w;
        }
        Ok(true)
    }

    /// The pattern read right to left.
    pub fn reversed(&self) -> Self {
        Self {
            cells: self.cells.iter().rev().copied().collect(),
        }
    }
}

/// Membership test with the length check.
pub fn word_in_pattern(word: &[Symbol], pat: &CylinderPattern) -> Result<bool> {
    pat.contains(word)
}

pub fn expand_pattern(pat: &CylinderPattern) -> Vec<PlainPattern> {
    pat.expand()
}

impl FromStr for CylinderPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cells = Vec::new();
        for tok in s.split_whitespace() {
            match tok {
                "**" => cells.push(Cell::Hat2),
                "***" => cells.push(Cell::Hat3),
                _ => parse_token(tok, &mut cells)?,
            }
        }
        Self::new(cells)
    }
}

fn parse_token(tok: &str, cells: &mut Vec<Cell>) -> Result<()> {
    let bad = || Error::MalformedPattern(format!("bad cell {tok:?}"));
    let mut chars = tok.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '[' {
            let mut set = SymbolSet::EMPTY;
            loop {
                match chars.next() {
                    Some(']') => break,
                    Some(c) => {
                        let s = Symbol::from_char(c).map_err(|_| bad())?;
                        set = SymbolSet::from_bits(set.bits() | SymbolSet::single(s).bits());
                    }
                    None => return Err(bad()),
                }
            }
            if set.is_empty() {
                return Err(Error::MalformedPattern("empty subset cell []".into()));
            }
            cells.push(Cell::Set(set));
        } else if c == '*' {
            let mut run = 1;
            while chars.peek() == Some(&'*') {
                chars.next();
                run += 1;
            }
            match run {
                2 => cells.push(Cell::Hat2),
                3 => cells.push(Cell::Hat3),
                _ => return Err(bad()),
            }
        } else {
            let s = Symbol::from_char(c).map_err(|_| bad())?;
            cells.push(Cell::Set(SymbolSet::single(s)));
        }
    }
    Ok(())
}

impl fmt::Display for CylinderPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// All words of length `n` in base-3 index order (first symbol most significant).
pub fn all_words(n: usize) -> impl Iterator<Item = Vec<Symbol>> {
    (0..3usize.pow(n as u32)).map(move |i| index_to_word(i, n))
}

pub fn index_to_word(mut i: usize, n: usize) -> Vec<Symbol> {
    let mut w = vec![Symbol::Zero; n];
    for k in (0..n).rev() {
        w[k] = Symbol::from_index(i % 3);
        i /= 3;
    }
    w
}

pub fn word_to_index(w: &[Symbol]) -> usize {
    w.iter().fold(0, |acc, s| acc * 3 + s.index())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::parse_word;

    fn count_members(p: &CylinderPattern) -> usize {
        all_words(p.span())
            .filter(|w| p.contains(w).unwrap())
            .count()
    }

    #[test]
    fn hat3_is_seven_words() {
        let p = CylinderPattern::lit("***");
        assert_eq!(p.span(), 3);
        assert_eq!(p.cardinality(), 7);
        assert_eq!(count_members(&p), 7);
        assert!(!p.contains(&parse_word("000").unwrap()).unwrap());
        assert!(p.contains(&parse_word("??0").unwrap()).unwrap());
    }

    #[test]
    fn one_hat2() {
        let p = CylinderPattern::lit("1 **");
        let members: Vec<String> = all_words(3)
            .filter(|w| p.contains(w).unwrap())
            .map(|w| crate::symbol::word_string(&w))
            .collect();
        let mut members = members;
        members.sort();
        assert_eq!(members, vec!["10?", "1?0", "1??"]);
        assert!(word_in_pattern(&parse_word("10?").unwrap(), &p).unwrap());
    }

    #[test]
    fn plain_pattern_expands_to_itself() {
        let p = CylinderPattern::lit("1 0 0 ?");
        let e = p.expand();
        assert_eq!(e.len(), 1);
        assert_eq!(
            e[0],
            vec![SymbolSet::ONE, SymbolSet::ZERO, SymbolSet::ZERO, SymbolSet::QMARK]
        );
        assert_eq!(CylinderPattern::lit("100?"), p);
    }

    #[test]
    fn parse_and_display_roundtrip() {
        let p = CylinderPattern::lit("1 [0?] ***");
        assert_eq!(p.span(), 5);
        assert_eq!(p.to_string(), "1 [0?] ***");
        assert_eq!(p.to_string().parse::<CylinderPattern>().unwrap(), p);
        assert_eq!(CylinderPattern::lit("[?0]").to_string(), "[0?]");
        assert_eq!(CylinderPattern::lit("1[0?]***"), p);
        assert_eq!(CylinderPattern::lit("000**1").span(), 6);
    }

    #[test]
    fn malformed() {
        assert!("".parse::<CylinderPattern>().is_err());
        assert!("[]".parse::<CylinderPattern>().is_err());
        assert!("1 [0?".parse::<CylinderPattern>().is_err());
        assert!("****".parse::<CylinderPattern>().is_err());
        assert!("x".parse::<CylinderPattern>().is_err());
        assert!(CylinderPattern::new(vec![Cell::Set(SymbolSet::EMPTY)]).is_err());
    }

    #[test]
    fn length_mismatch() {
        let p = CylinderPattern::lit("***");
        assert!(matches!(
            p.contains(&parse_word("00").unwrap()),
            Err(Error::LengthMismatch { word: 2, span: 3 })
        ));
    }

    #[test]
    fn expansion_is_disjoint() {
        let p = CylinderPattern::lit("** *** [1?]");
        let pieces = p.expand();
        for w in all_words(p.span()) {
            let hits = pieces
                .iter()
                .filter(|pp| pp.iter().zip(&w).all(|(s, x)| s.contains(*x)))
                .count();
            let member = p.contains(&w).unwrap();
            assert_eq!(hits, usize::from(member));
        }
    }

    #[test]
    fn index_roundtrip() {
        for i in 0..81 {
            assert_eq!(word_to_index(&index_to_word(i, 4)), i);
        }
    }
}
