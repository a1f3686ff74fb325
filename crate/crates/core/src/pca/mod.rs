//! Simulation of the binary automaton, its envelope and the shifted family
//! with neighbourhood `{i, i+1, i+2}`.
//!
//! A step samples every output cell independently from [`local_rule`] using
//! the variate keyed by `(t, n)`, where `n` is the absolute index of the
//! output site. Two rows stepped with the same stream and `t` are therefore
//! coupled through common randomness, and because sampling is inverse-CDF in
//! the order `0 < ? < 1` the coupling is monotone.

mod config;
mod rule;

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

pub use config::{Boundary, Configuration};
pub use rule::{envelope_row, local_rule, Alphabet, ModelSpec, NeighbourhoodClass, Sampler};

use crate::error::{Error, Result};
use crate::stream::SeededStream;
use crate::symbol::Symbol;

const PARALLEL_WIDTH: usize = 1 << 14;

fn check_alphabet(cfg: &Configuration, model: &ModelSpec) -> Result<()> {
    if model.alphabet == Alphabet::Binary && !cfg.is_binary() {
        return Err(Error::QmarkInBinary);
    }
    Ok(())
}

/// One synchronous update at time `t`.
pub fn step(
    cfg: &Configuration,
    model: &ModelSpec,
    stream: &SeededStream,
    t: u64,
) -> Result<Configuration> {
    check_alphabet(cfg, model)?;
    step_with(cfg, model.offset, &model.sampler(), stream, t)
}

pub(crate) fn step_with(
    cfg: &Configuration,
    offset: i64,
    sampler: &Sampler,
    stream: &SeededStream,
    t: u64,
) -> Result<Configuration> {
    let w = cfg.width();
    let cells = cfg.cells();
    let t = t as i64;
    let (out_origin, out_width) = match cfg.boundary() {
        Boundary::Cyclic => (cfg.origin(), w),
        Boundary::LightCone => {
            if w < 3 {
                return Err(Error::WindowExhausted(w));
            }
            (cfg.origin() - offset, w - 2)
        }
    };
    let cyclic = cfg.boundary() == Boundary::Cyclic;
    // index into `cells` of the leftmost neighbour of output k
    let shift = out_origin + offset - cfg.origin();
    let row = stream.row(t);
    let cell_at = |k: usize| -> Symbol {
        let base = k as i64 + shift;
        let triple = if cyclic {
            let wi = w as i64;
            [
                cells[base.rem_euclid(wi) as usize],
                cells[(base + 1).rem_euclid(wi) as usize],
                cells[(base + 2).rem_euclid(wi) as usize],
            ]
        } else {
            let b = base as usize;
            [cells[b], cells[b + 1], cells[b + 2]]
        };
        let u = row.uniform(out_origin + k as i64);
        sampler.sample(NeighbourhoodClass::of(triple), u)
    };
    let out: Vec<Symbol> = if out_width >= PARALLEL_WIDTH {
        (0..out_width).into_par_iter().map(cell_at).collect()
    } else {
        (0..out_width).map(cell_at).collect()
    };
    Ok(Configuration::from_parts(out, cfg.boundary(), out_origin))
}

/// Cell counts at one time step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DensityRow {
    pub t: u64,
    pub width: usize,
    pub count0: usize,
    #[serde(rename = "countQ")]
    pub count_q: usize,
    pub count1: usize,
}

impl DensityRow {
    fn of(t: u64, cfg: &Configuration) -> Self {
        let [count0, count_q, count1] = cfg.counts();
        Self {
            t,
            width: cfg.width(),
            count0,
            count_q,
            count1,
        }
    }

    pub fn density(&self, s: Symbol) -> f64 {
        let c = [self.count0, self.count_q, self.count1][s.index()];
        c as f64 / self.width as f64
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    /// `steps + 1` rows, `t = 0..=steps`.
    pub rows: Vec<DensityRow>,
    pub last: Configuration,
}

impl Trajectory {
    pub const CSV_HEADER: &'static str = "t,width,count0,countQ,count1";

    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{}", Self::CSV_HEADER)?;
        for r in &self.rows {
            writeln!(out, "{},{},{},{},{}", r.t, r.width, r.count0, r.count_q, r.count1)?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("write to Vec");
        String::from_utf8(buf).expect("ascii")
    }
}

/// Runs `steps` updates from `init` (times `0..steps`) and records counts.
pub fn trajectory(
    init: &Configuration,
    model: &ModelSpec,
    steps: u64,
    stream: &SeededStream,
) -> Result<Trajectory> {
    check_alphabet(init, model)?;
    let sampler = model.sampler();
    let mut rows = Vec::with_capacity(steps as usize + 1);
    rows.push(DensityRow::of(0, init));
    let mut cur = init.clone();
    for t in 0..steps {
        cur = step_with(&cur, model.offset, &sampler, stream, t)?;
        rows.push(DensityRow::of(t + 1, &cur));
    }
    Ok(Trajectory { rows, last: cur })
}

/// Envelope row recording agreement (`0`/`1`) and disagreement (`?`).
pub fn envelope_of_pair(a: &Configuration, b: &Configuration) -> Result<Configuration> {
    if a.width() != b.width() {
        return Err(Error::Incompatible(format!(
            "widths {} and {}",
            a.width(),
            b.width()
        )));
    }
    if !a.is_binary() || !b.is_binary() {
        return Err(Error::QmarkInBinary);
    }
    let cells = a
        .cells()
        .iter()
        .zip(b.cells())
        .map(|(x, y)| if x == y { *x } else { Symbol::Qmark })
        .collect();
    Ok(Configuration::from_parts(cells, a.boundary(), a.origin()))
}

/// Advances two binary rows with the same variates.
pub fn coupled_step(
    a: &Configuration,
    b: &Configuration,
    model: &ModelSpec,
    stream: &SeededStream,
    t: u64,
) -> Result<(Configuration, Configuration)> {
    if a.width() != b.width() || a.boundary() != b.boundary() || a.origin() != b.origin() {
        return Err(Error::Incompatible(
            "coupled rows need equal width, boundary and origin".into(),
        ));
    }
    if !a.is_binary() || !b.is_binary() {
        return Err(Error::QmarkInBinary);
    }
    let sampler = model.sampler();
    Ok((
        step_with(a, model.offset, &sampler, stream, t)?,
        step_with(b, model.offset, &sampler, stream, t)?,
    ))
}

/// Runs a coupled pair for `steps` updates and returns the disagreement
/// count after each step (`steps + 1` entries, starting at `t = 0`).
pub fn coupled_disagreements(
    a: &Configuration,
    b: &Configuration,
    model: &ModelSpec,
    steps: u64,
    stream: &SeededStream,
) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(steps as usize + 1);
    let (mut x, mut y) = (a.clone(), b.clone());
    let diff = |x: &Configuration, y: &Configuration| {
        x.cells().iter().zip(y.cells()).filter(|(u, v)| u != v).count()
    };
    out.push(diff(&x, &y));
    for t in 0..steps {
        (x, y) = coupled_step(&x, &y, model, stream, t)?;
        out.push(diff(&x, &y));
    }
    Ok(out)
}
