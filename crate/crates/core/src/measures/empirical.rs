//! Sliding-window frequencies of a simulated row, and the quantities that
//! must vanish under a stationary law.

use serde::Serialize;

use super::{CylinderMeasure, TIMeasure, MAX_ORDER};
use crate::error::{Error, Result};
use crate::params::{to_f64, Params};
use crate::pattern::{word_to_index, CylinderPattern};
use crate::pca::{Boundary, Configuration};

/// Word frequencies of lengths `0..=order` over all windows of one row.
#[derive(Clone, Debug)]
pub struct EmpiricalMeasure {
    order: usize,
    windows: usize,
    /// `counts[l][i]`: windows of length `l` reading word `i`.
    counts: Vec<Vec<u64>>,
}

pub fn empirical_measure(row: &Configuration, order: usize) -> Result<EmpiricalMeasure> {
    if order > MAX_ORDER {
        return Err(Error::OrderExceeded {
            needed: order,
            order: MAX_ORDER,
        });
    }
    let cells = row.cells();
    let w = cells.len();
    let windows = match row.boundary() {
        Boundary::Cyclic => w,
        Boundary::LightCone => {
            if w < order {
                return Err(Error::Incompatible(format!(
                    "row of width {w} has no window of length {order}"
                )));
            }
            w - order + 1
        }
    };
    let mut top = vec![0u64; 3usize.pow(order as u32)];
    for start in 0..windows {
        let word: Vec<_> = (0..order).map(|k| cells[(start + k) % w]).collect();
        top[word_to_index(&word)] += 1;
    }
    let mut counts = vec![top];
    for l in (0..order).rev() {
        let longer = counts.last().unwrap();
        counts.push(
            (0..3usize.pow(l as u32))
                .map(|i| longer[3 * i] + longer[3 * i + 1] + longer[3 * i + 2])
                .collect(),
        );
    }
    counts.reverse();
    Ok(EmpiricalMeasure {
        order,
        windows,
        counts,
    })
}

impl EmpiricalMeasure {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn windows(&self) -> usize {
        self.windows
    }

    pub fn prob(&self, pat: &CylinderPattern) -> Result<f64> {
        let span = pat.span();
        if span > self.order {
            return Err(Error::OrderExceeded {
                needed: span,
                order: self.order,
            });
        }
        let table = &self.counts[span];
        let mut total = 0u64;
        for plain in pat.expand() {
            let mut idx = vec![0usize];
            for set in &plain {
                idx = idx
                    .iter()
                    .flat_map(|i| set.iter().map(move |s| i * 3 + s.index()))
                    .collect();
            }
            total += idx.iter().map(|i| table[*i]).sum::<u64>();
        }
        Ok(total as f64 / self.windows as f64)
    }

    pub fn mu(&self, pat: &str) -> Result<f64> {
        self.prob(&pat.parse()?)
    }

    /// `max |μ(w) - μ(reverse w)|` over words of full length.
    pub fn reflection_asymmetry(&self) -> f64 {
        let l = self.order;
        let table = &self.counts[l];
        let mut worst = 0.0f64;
        for (i, c) in table.iter().enumerate() {
            let mut w = crate::pattern::index_to_word(i, l);
            w.reverse();
            let d = (*c as f64 - table[word_to_index(&w)] as f64).abs() / self.windows as f64;
            worst = worst.max(d);
        }
        worst
    }
}

/// Float-valued cylinder probabilities.
pub trait ApproxMeasure {
    fn approx(&self, pat: &str) -> Result<f64>;
}

impl ApproxMeasure for EmpiricalMeasure {
    fn approx(&self, pat: &str) -> Result<f64> {
        self.mu(pat)
    }
}

impl ApproxMeasure for TIMeasure {
    fn approx(&self, pat: &str) -> Result<f64> {
        Ok(to_f64(&CylinderMeasure::mu(self, pat)?))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StationaryReport {
    pub params: Params,
    pub mu_qmark: f64,
    pub mu_hat3: f64,
    /// `|μ(?) - r μ(***)|`
    pub gauge: f64,
    pub mu_10q: f64,
    pub mu_000q1: f64,
    pub mu_000q: f64,
    /// The quantities forced to zero at these parameters
    /// (`μ(***)` if `q > 0`; `μ(10?)`, `μ(000?1)`, `μ(000?)` if `q = 0 < p`).
    pub forced: Vec<(String, f64)>,
}

impl StationaryReport {
    pub fn max_forced(&self) -> f64 {
        self.forced.iter().map(|(_, v)| *v).fold(0.0, f64::max)
    }
}

pub fn stationary_conclusion_check<M: ApproxMeasure>(params: &Params, mu: &M) -> Result<StationaryReport> {
    let (p, q, r) = params.to_f64();
    let mu_qmark = mu.approx("?")?;
    let mu_hat3 = mu.approx("***")?;
    let mu_10q = mu.approx("10?")?;
    let mu_000q1 = mu.approx("000?1")?;
    let mu_000q = mu.approx("000?")?;
    let mut forced = Vec::new();
    if q > 0.0 {
        forced.push(("mu(***)".to_string(), mu_hat3));
    } else if p > 0.0 {
        forced.push(("mu(10?)".to_string(), mu_10q));
        forced.push(("mu(000?1)".to_string(), mu_000q1));
        forced.push(("mu(000?)".to_string(), mu_000q));
    }
    Ok(StationaryReport {
        params: params.clone(),
        mu_qmark,
        mu_hat3,
        gauge: (mu_qmark - r * mu_hat3).abs(),
        mu_10q,
        mu_000q1,
        mu_000q,
        forced,
    })
}
