//! Families of disjoint cylinder events inside `{η(0) = ?}` and the two
//! inequalities they yield.
//!
//! Rows are words placed at a start index within the window `-2..=2`.

use serde::Serialize;

use super::{CylinderMeasure, TIMeasure};
use crate::error::Result;
use crate::params::{serialize_rational, Rational};
use crate::pattern::all_words;
use crate::symbol::{parse_word, Symbol};

const WINDOW_START: i64 = -2;
const WINDOW_LEN: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub start: i64,
    pub word: &'static str,
}

const fn row(start: i64, word: &'static str) -> TableRow {
    TableRow { start, word }
}

pub const TABLE_1: [TableRow; 17] = [
    row(-1, "1???"),
    row(-1, "1??0"),
    row(-1, "1?0?"),
    row(-1, "1?00"),
    row(-1, "???"),
    row(-1, "??0"),
    row(-2, "00?"),
    row(-2, "?0?"),
    row(-2, "???1"),
    row(-2, "0??1"),
    row(-2, "10??"),
    row(-2, "10?0"),
    row(-1, "1??1"),
    row(-1, "1?01"),
    row(-1, "1?1"),
    row(-2, "1??1"),
    row(-2, "10?1"),
];

pub const TABLE_2: [TableRow; 19] = [
    row(-1, "????"),
    row(-1, "???0"),
    row(-1, "??0?"),
    row(-1, "??00"),
    row(-1, "0???"),
    row(-1, "0??0"),
    row(-1, "0?0?"),
    row(-1, "0?00"),
    row(-1, "1???"),
    row(-1, "1??0"),
    row(-1, "1??1"),
    row(-1, "1?0?"),
    row(-1, "1?00"),
    row(-1, "1?01"),
    row(0, "?1"),
    row(-1, "???1"),
    row(-1, "0??1"),
    row(-1, "??01"),
    row(-1, "0?01"),
];

pub const TABLE_3: [TableRow; 9] = [
    row(-1, "?0??"),
    row(-1, "?0?0"),
    row(-1, "00??"),
    row(-1, "00?0"),
    row(-1, "10??"),
    row(-1, "10?0"),
    row(-1, "?0?1"),
    row(-1, "00?1"),
    row(-1, "10?1"),
];

pub const TABLE_4: [TableRow; 3] = [row(-1, "?00?"), row(-1, "000?"), row(-1, "100?")];

/// Container event of each table, as a row.
pub const CONTAINERS: [TableRow; 4] = [row(0, "?"), row(0, "?"), row(0, "0?"), row(0, "00?")];

pub fn table(which: usize) -> &'static [TableRow] {
    match which {
        1 => &TABLE_1,
        2 => &TABLE_2,
        3 => &TABLE_3,
        4 => &TABLE_4,
        _ => panic!("no table {which}"),
    }
}

impl TableRow {
    pub fn contains(&self, window: &[Symbol]) -> bool {
        let w = parse_word(self.word).expect("table rows are words");
        let at = (self.start - WINDOW_START) as usize;
        window[at..at + w.len()] == w[..]
    }

    fn probability<M: CylinderMeasure>(&self, mu: &M) -> Result<Rational> {
        mu.mu(self.word)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableStructure {
    pub table: usize,
    pub rows: usize,
    pub windows: usize,
    /// Index pairs of rows that share a window.
    pub overlaps: Vec<(usize, usize)>,
    /// Rows with a window outside the container.
    pub escapes: Vec<usize>,
}

impl TableStructure {
    pub fn passed(&self) -> bool {
        self.overlaps.is_empty() && self.escapes.is_empty()
    }
}

/// Exhaustive check over all `3^5` windows on `-2..=2` that the rows of a
/// table are pairwise disjoint and lie inside its container event.
pub fn table_structure(which: usize) -> TableStructure {
    let rows = table(which);
    let container = CONTAINERS[which - 1];
    let mut overlaps = Vec::new();
    let mut escapes = Vec::new();
    let windows: Vec<Vec<Symbol>> = all_words(WINDOW_LEN).collect();
    for (i, a) in rows.iter().enumerate() {
        if windows.iter().any(|w| a.contains(w) && !container.contains(w)) {
            escapes.push(i);
        }
        for (j, b) in rows.iter().enumerate().skip(i + 1) {
            if windows.iter().any(|w| a.contains(w) && b.contains(w)) {
                overlaps.push((i, j));
            }
        }
    }
    TableStructure {
        table: which,
        rows: rows.len(),
        windows: windows.len(),
        overlaps,
        escapes,
    }
}

/// The containers of tables 2, 3 and 4 are pairwise disjoint, so their row
/// probabilities add up under `μ(?) + μ(0?) + μ(00?)`.
pub fn tables_containers_disjoint() -> bool {
    let windows: Vec<Vec<Symbol>> = all_words(WINDOW_LEN).collect();
    let cs = &CONTAINERS[1..];
    (0..cs.len()).all(|i| {
        (i + 1..cs.len()).all(|j| !windows.iter().any(|w| cs[i].contains(w) && cs[j].contains(w)))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Inequality {
    /// `μ(?) ≥ μ(***) - 2μ(0?) + μ(?0?) - 2μ(100?) + 2μ(1***) + 2μ(1??1) + μ(1?1) + 4μ(1?01)`
    Ineq1,
    /// `μ(?) + μ(0?) + μ(00?) ≥ μ([0?]***) + 2μ(1***) - μ(100?) + μ(1?) + 2μ(1?01) + μ(1??1)`
    Ineq2,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCheck {
    pub inequality: Inequality,
    pub structure: Vec<TableStructure>,
    #[serde(serialize_with = "serialize_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub rhs: Rational,
    /// Alternative displayed right-hand sides; all should equal `rhs`.
    #[serde(serialize_with = "serialize_rationals")]
    pub rhs_forms: Vec<Rational>,
    /// Total probability of the table rows (bounded by `lhs`).
    #[serde(serialize_with = "serialize_rational")]
    pub row_sum: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub slack: Rational,
    pub passed: bool,
}

fn serialize_rationals<S: serde::Serializer>(xs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(crate::params::rat_string))
}

pub fn verify_table_inequality(which: Inequality, mu: &TIMeasure) -> Result<TableCheck> {
    mu.require_reflection_invariant()?;
    mu.check_span(WINDOW_LEN)?;
    let m = |s: &str| mu.mu(s);
    let two = Rational::from_integer(2.into());
    let four = Rational::from_integer(4.into());
    let tables: &[usize] = match which {
        Inequality::Ineq1 => &[1],
        Inequality::Ineq2 => &[2, 3, 4],
    };
    let structure: Vec<TableStructure> = tables.iter().map(|t| table_structure(*t)).collect();
    let mut row_sum = Rational::from_integer(0.into());
    for t in tables {
        for r in table(*t) {
            row_sum += r.probability(mu)?;
        }
    }
    let (lhs, rhs, rhs_forms) = match which {
        Inequality::Ineq1 => {
            let lhs = m("?")?;
            let common = m("***")? + &two * m("1***")? - &two * m("100?")?;
            let first = &common - m("0??")? - m("0?0")? - m("?00")?
                - (m("??01")? + m("0?01")?)
                - (m("?0?1")? + m("00?1")?)
                + (&two * m("1??1")? + m("1?1")? + &two * m("1?01")?);
            let second = &common - m("0??")? - m("0?0")? - m("0?1")? - m("?00")? - m("?01")?
                + (&two * m("1??1")? + m("1?1")? + &four * m("1?01")?);
            let last = &common - &two * m("0?")? + m("?0?")?
                + &two * m("1??1")?
                + m("1?1")?
                + &four * m("1?01")?;
            (lhs, last, vec![first, second])
        }
        Inequality::Ineq2 => {
            let lhs = m("?")? + m("0?")? + m("00?")?;
            let rhs = m("[0?]***")? + &two * m("1***")? - m("100?")? + m("1?")?
                + &two * m("1?01")?
                + m("1??1")?;
            (lhs, rhs, vec![])
        }
    };
    let slack = &lhs - &rhs;
    let passed = structure.iter().all(|s| s.passed())
        && (which == Inequality::Ineq1 || tables_containers_disjoint())
        && slack >= Rational::from_integer(0.into());
    Ok(TableCheck {
        inequality: which,
        structure,
        lhs,
        rhs,
        rhs_forms,
        row_sum,
        slack,
        passed,
    })
}
