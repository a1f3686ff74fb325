//! Percolation games on `Z^2` solved by backward induction.
//!
//! Every site gets an i.i.d. label (trap `p`, target `q`, open `r`). The
//! class of a site is `W` if the player moving first from it wins, `L` if
//! they lose, `D` for a draw. Classes on one line are a function of the
//! labels on that line and the classes on the successor line:
//!
//! | version | line of `(x, y)` | position | successor |
//! |---------|------------------|----------|-----------|
//! | V1      | `x + y`          | `x`      | `k + 2`   |
//! | V2      | `y`              | `x`      | `k + 1`   |
//! | V3      | `x + y`          | `x`      | `k + 1`   |
//! | V4      | `y`              | `x`      | `k + 1`   |
//!
//! With these identifications a site at position `n` sees successor
//! positions `n, n+1, n+2` in V1/V2 and `n-1, n, n+1` in V3/V4, so the line
//! recurrence is the envelope automaton with offset 0 or -1.
//! (Identifying V3 diagonals by `y` instead gives offset 0.)

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::dist::LocalDistribution;
use crate::error::{Error, Result};
use crate::params::{rat_string, to_f64, Params, Rational};
use crate::pca::{local_rule, ModelSpec};
use crate::stream::SeededStream;
use crate::symbol::{word_string, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GameVersion {
    V1,
    V2,
    V3,
    V4,
}

impl GameVersion {
    pub const ALL: [GameVersion; 4] = [
        GameVersion::V1,
        GameVersion::V2,
        GameVersion::V3,
        GameVersion::V4,
    ];

    /// Allowed moves from `(x, y)`, in the listed order.
    pub fn out_set(self, x: i64, y: i64) -> [(i64, i64); 3] {
        match self {
            GameVersion::V1 => [(x, y + 2), (x + 1, y + 1), (x + 2, y)],
            GameVersion::V2 => [(x, y + 1), (x + 1, y + 1), (x + 2, y + 1)],
            GameVersion::V3 => [(x + 1, y), (x, y + 1), (x - 1, y + 2)],
            GameVersion::V4 => [(x - 1, y + 1), (x, y + 1), (x + 1, y + 1)],
        }
    }

    /// `(line, position)` of a site.
    pub fn line_of(self, x: i64, y: i64) -> (i64, i64) {
        match self {
            GameVersion::V1 | GameVersion::V3 => (x + y, x),
            GameVersion::V2 | GameVersion::V4 => (y, x),
        }
    }

    pub fn site(self, line: i64, pos: i64) -> (i64, i64) {
        match self {
            GameVersion::V1 | GameVersion::V3 => (pos, line - pos),
            GameVersion::V2 | GameVersion::V4 => (pos, line),
        }
    }

    /// Distance from a line to the line its out-neighbours lie on.
    pub fn line_step(self) -> i64 {
        match self {
            GameVersion::V1 => 2,
            _ => 1,
        }
    }

    /// Neighbourhood offset of the induced envelope automaton.
    pub fn offset(self) -> i64 {
        match self {
            GameVersion::V1 | GameVersion::V2 => 0,
            GameVersion::V3 | GameVersion::V4 => -1,
        }
    }

    /// Successor-line positions of the out-neighbours of `(line, pos)`,
    /// in increasing order.
    pub fn successor_positions(self, line: i64, pos: i64) -> [i64; 3] {
        let (x, y) = self.site(line, pos);
        let mut ps = self.out_set(x, y).map(|(a, b)| {
            let (k, n) = self.line_of(a, b);
            debug_assert_eq!(k, line + self.line_step());
            n
        });
        ps.sort_unstable();
        ps
    }
}

impl fmt::Display for GameVersion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GameVersion::V1 => "v1",
            GameVersion::V2 => "v2",
            GameVersion::V3 => "v3",
            GameVersion::V4 => "v4",
        };
        f.write_str(s)
    }
}

impl FromStr for GameVersion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "v1" | "1" => Ok(GameVersion::V1),
            "v2" | "2" => Ok(GameVersion::V2),
            "v3" | "3" => Ok(GameVersion::V3),
            "v4" | "4" => Ok(GameVersion::V4),
            _ => Err(Error::Parse {
                what: "game version",
                input: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SiteLabel {
    Trap,
    Target,
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GameClass {
    W,
    L,
    D,
}

impl GameClass {
    pub fn symbol(self) -> Symbol {
        match self {
            GameClass::W => Symbol::Zero,
            GameClass::L => Symbol::One,
            GameClass::D => Symbol::Qmark,
        }
    }

    pub fn from_symbol(s: Symbol) -> Self {
        match s {
            Symbol::Zero => GameClass::W,
            Symbol::One => GameClass::L,
            Symbol::Qmark => GameClass::D,
        }
    }
}

/// Class of a site from its label and the classes of its out-neighbours.
#[inline]
pub fn resolve(label: SiteLabel, next: [GameClass; 3]) -> GameClass {
    match label {
        SiteLabel::Trap => GameClass::W,
        SiteLabel::Target => GameClass::L,
        SiteLabel::Open => {
            if next.contains(&GameClass::L) {
                GameClass::W
            } else if next.contains(&GameClass::D) {
                GameClass::D
            } else {
                GameClass::L
            }
        }
    }
}

/// Exact-threshold label sampler.
#[derive(Clone, Copy, Debug)]
pub struct LabelSampler {
    trap: f64,
    trap_or_target: f64,
}

impl LabelSampler {
    pub fn new(params: &Params) -> Self {
        Self {
            trap: to_f64(params.p()),
            trap_or_target: to_f64(&(params.p() + params.q())),
        }
    }

    #[inline]
    pub fn label(&self, u: f64) -> SiteLabel {
        if u < self.trap {
            SiteLabel::Trap
        } else if u < self.trap_or_target {
            SiteLabel::Target
        } else {
            SiteLabel::Open
        }
    }

    /// Label of site `(line, pos)`; keyed by absolute coordinates so that
    /// runs with different horizons see the same field.
    #[inline]
    pub fn at(&self, stream: &SeededStream, line: i64, pos: i64) -> SiteLabel {
        self.label(stream.uniform(line, pos))
    }
}

/// Classes on one line, `classes[j]` at position `origin + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassLine {
    pub line: i64,
    pub origin: i64,
    pub classes: Vec<GameClass>,
}

impl ClassLine {
    pub fn get(&self, pos: i64) -> Option<GameClass> {
        let j = pos - self.origin;
        (0..self.classes.len() as i64)
            .contains(&j)
            .then(|| self.classes[j as usize])
    }

    pub fn symbols(&self) -> String {
        word_string(&self.classes.iter().map(|c| c.symbol()).collect::<Vec<_>>())
    }
}

/// Classifies the sites `origin .. origin + labels.len()` of line `line`
/// given the classes on its successor line.
pub fn classify_line(
    version: GameVersion,
    line: i64,
    origin: i64,
    labels: &[SiteLabel],
    next: &ClassLine,
) -> Result<ClassLine> {
    if next.line != line + version.line_step() {
        return Err(Error::Incompatible(format!(
            "line {} is not the successor of line {line} in {version}",
            next.line
        )));
    }
    let classes = labels
        .iter()
        .enumerate()
        .map(|(j, label)| {
            let pos = origin + j as i64;
            let ps = version.successor_positions(line, pos);
            let mut around = [GameClass::D; 3];
            for (slot, p) in around.iter_mut().zip(ps) {
                *slot = next.get(p).ok_or(Error::InsufficientCoverage(pos))?;
            }
            Ok(resolve(*label, around))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassLine {
        line,
        origin,
        classes,
    })
}

/// Backward-induction solution of the light cone below the origin for one
/// label field. `lines[d]` is the line at depth `d`; the frontier at depth
/// `horizon` is all `D`.
#[derive(Clone, Debug)]
pub struct ClassGrid {
    pub version: GameVersion,
    pub lines: Vec<ClassLine>,
}

impl ClassGrid {
    pub fn solve(
        version: GameVersion,
        params: &Params,
        horizon: u64,
        stream: &SeededStream,
    ) -> Result<Self> {
        let labels = LabelSampler::new(params);
        let off = version.offset();
        let step = version.line_step();
        let h = horizon as i64;
        let mut lines = Vec::with_capacity(horizon as usize + 1);
        let mut next = ClassLine {
            line: h * step,
            origin: h * off,
            classes: vec![GameClass::D; 2 * horizon as usize + 1],
        };
        lines.push(next.clone());
        for d in (0..h).rev() {
            let line = d * step;
            let origin = d * off;
            let width = 2 * d as usize + 1;
            let lab: Vec<SiteLabel> = (0..width as i64)
                .map(|j| labels.at(stream, line, origin + j))
                .collect();
            next = classify_line(version, line, origin, &lab, &next)?;
            lines.push(next.clone());
        }
        lines.reverse();
        Ok(Self { version, lines })
    }

    pub fn origin_class(&self) -> GameClass {
        self.lines[0].classes[0]
    }
}

/// Origin class for one sample; same result as [`ClassGrid::solve`] without
/// keeping the grid.
pub fn origin_class(
    version: GameVersion,
    labels: &LabelSampler,
    horizon: u64,
    stream: &SeededStream,
) -> GameClass {
    let off = version.offset();
    let step = version.line_step();
    let h = horizon as usize;
    let mut next = vec![GameClass::D; 2 * h + 1];
    let mut cur = Vec::with_capacity(2 * h + 1);
    for d in (0..h).rev() {
        let line = d as i64 * step;
        let origin = d as i64 * off;
        let row = stream.row(line);
        cur.clear();
        cur.extend((0..2 * d + 1).map(|j| {
            let label = labels.label(row.uniform(origin + j as i64));
            resolve(label, [next[j], next[j + 1], next[j + 2]])
        }));
        std::mem::swap(&mut cur, &mut next);
    }
    next[0]
}

/// Draw-fraction estimate with a 95% Wilson score interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DrawEstimate {
    pub horizon: u64,
    pub samples: u64,
    pub draws: u64,
    pub fraction: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

pub fn wilson_interval(successes: u64, n: u64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let z = 1.959_963_984_540_054_f64;
    let n = n as f64;
    let phat = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (phat + z * z / (2.0 * n)) / denom;
    let half = z * (phat * (1.0 - phat) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    let lo = if successes == 0 { 0.0 } else { (centre - half).max(0.0) };
    let hi = if successes as f64 == n { 1.0 } else { (centre + half).min(1.0) };
    (lo, hi)
}

/// Fraction of samples whose origin is still unresolved when the frontier
/// at depth `horizon` starts all-`D`. Sample `i` uses `stream.derive(i)`.
pub fn draw_fraction(
    version: GameVersion,
    params: &Params,
    horizon: u64,
    samples: u64,
    stream: &SeededStream,
) -> DrawEstimate {
    let labels = LabelSampler::new(params);
    let draws = (0..samples)
        .into_par_iter()
        .filter(|i| origin_class(version, &labels, horizon, &stream.derive(*i)) == GameClass::D)
        .count() as u64;
    let (ci_low, ci_high) = wilson_interval(draws, samples);
    DrawEstimate {
        horizon,
        samples,
        draws,
        fraction: if samples == 0 { 0.0 } else { draws as f64 / samples as f64 },
        ci_low,
        ci_high,
    }
}

/// One comparison of the induced one-site law with the envelope row.
#[derive(Clone, Debug, Serialize)]
pub struct KernelComparison {
    pub successor_classes: String,
    pub induced: LocalDistribution,
    pub envelope: LocalDistribution,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub version: GameVersion,
    pub p: String,
    pub q: String,
    pub offset: i64,
    pub geometry_ok: bool,
    pub matches: usize,
    pub comparisons: Vec<KernelComparison>,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.geometry_ok && self.matches == self.comparisons.len() && self.comparisons.len() == 27
    }
}

/// For each of the 27 successor-class triples, integrates the label of a
/// single site out of [`classify_line`] and compares the resulting law of
/// its class with the envelope row for that triple.
pub fn kernel_correspondence(version: GameVersion, params: &Params) -> Result<KernelReport> {
    params.require_region()?;
    let model = ModelSpec::envelope(params.clone()).with_offset(version.offset());
    let label_law = [
        (SiteLabel::Trap, params.p().clone()),
        (SiteLabel::Target, params.q().clone()),
        (SiteLabel::Open, params.r().clone()),
    ];
    let line = 0;
    let pos = 0;
    let ps = version.successor_positions(line, pos);
    let geometry_ok = ps == [pos + version.offset(), pos + version.offset() + 1, pos + version.offset() + 2];
    let mut comparisons = Vec::with_capacity(27);
    for word in crate::pattern::all_words(3) {
        let next = ClassLine {
            line: line + version.line_step(),
            origin: ps[0],
            classes: word.iter().map(|s| GameClass::from_symbol(*s)).collect(),
        };
        let mut induced = LocalDistribution::new(Rational::default(), Rational::default(), Rational::default());
        for (label, prob) in &label_law {
            let cls = classify_line(version, line, pos, &[*label], &next)?.classes[0];
            match cls.symbol() {
                Symbol::Zero => induced.zero += prob,
                Symbol::Qmark => induced.qmark += prob,
                Symbol::One => induced.one += prob,
            }
        }
        let envelope = local_rule(&model, [word[0], word[1], word[2]])?;
        comparisons.push(KernelComparison {
            successor_classes: word_string(&word),
            equal: induced == envelope,
            induced,
            envelope,
        });
    }
    let matches = comparisons.iter().filter(|c| c.equal).count();
    Ok(KernelReport {
        version,
        p: rat_string(params.p()),
        q: rat_string(params.q()),
        offset: version.offset(),
        geometry_ok,
        matches,
        comparisons,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub version: GameVersion,
    pub p: String,
    pub q: String,
    pub estimate: DrawEstimate,
    pub seed: u64,
}

pub const SWEEP_CSV_HEADER: &str = "version,p,q,horizon,samples,draw_fraction,ci_low,ci_high,seed";

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for r in rows {
        let e = &r.estimate;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.version, r.p, r.q, e.horizon, e.samples, e.fraction, e.ci_low, e.ci_high, r.seed
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prm(p: (i64, i64), q: (i64, i64)) -> Params {
        Params::from_ratios(p, q).unwrap()
    }

    #[test]
    fn out_sets() {
        assert_eq!(GameVersion::V1.out_set(0, 0), [(0, 2), (1, 1), (2, 0)]);
        assert_eq!(GameVersion::V4.out_set(5, -2), [(4, -1), (5, -1), (6, -1)]);
        assert_eq!(GameVersion::V3.out_set(0, 0), [(1, 0), (0, 1), (-1, 2)]);
        assert_eq!(GameVersion::V2.out_set(0, 0), [(0, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn resolution_rules() {
        use GameClass::*;
        assert_eq!(resolve(SiteLabel::Trap, [L, L, L]), W);
        assert_eq!(resolve(SiteLabel::Open, [W, D, W]), D);
        assert_eq!(resolve(SiteLabel::Target, [W, W, W]), L);
        assert_eq!(resolve(SiteLabel::Open, [W, W, W]), L);
        assert_eq!(resolve(SiteLabel::Open, [D, L, D]), W);
    }

    #[test]
    fn successor_lines() {
        for v in GameVersion::ALL {
            for k in -3..4 {
                for n in -3..4 {
                    let (x, y) = v.site(k, n);
                    assert_eq!(v.line_of(x, y), (k, n));
                    for (a, b) in v.out_set(x, y) {
                        assert_eq!(v.line_of(a, b).0, k + v.line_step(), "{v}");
                    }
                    let ps = v.successor_positions(k, n);
                    assert_eq!(ps, [n + v.offset(), n + v.offset() + 1, n + v.offset() + 2]);
                }
            }
        }
    }

    #[test]
    fn classify_line_needs_coverage() {
        let next = ClassLine {
            line: 1,
            origin: 0,
            classes: vec![GameClass::W; 3],
        };
        let labels = [SiteLabel::Open, SiteLabel::Open];
        assert_eq!(
            classify_line(GameVersion::V2, 0, 0, &labels, &next),
            Err(Error::InsufficientCoverage(1))
        );
        let ok = classify_line(GameVersion::V2, 0, 0, &labels[..1], &next).unwrap();
        assert_eq!(ok.classes, vec![GameClass::L]);
        assert!(classify_line(GameVersion::V1, 0, 0, &labels[..1], &next).is_err());
    }

    #[test]
    fn kernel_examples() {
        let params = prm((1, 3), (1, 5));
        for v in GameVersion::ALL {
            let rep = kernel_correspondence(v, &params).unwrap();
            assert!(rep.passed(), "{v}");
            let www = &rep.comparisons[0];
            assert_eq!(www.successor_classes, "000");
            assert_eq!(www.induced, LocalDistribution::binary(crate::params::rat(1, 3), crate::params::rat(2, 3)));
        }
        assert!(kernel_correspondence(GameVersion::V1, &prm((0, 1), (0, 1))).is_err());
    }

    #[test]
    fn all_traps_never_draw() {
        for v in GameVersion::ALL {
            let e = draw_fraction(v, &prm((1, 1), (0, 1)), 5, 200, &SeededStream::new(3));
            assert_eq!(e.draws, 0);
        }
    }

    #[test]
    fn zero_horizon_is_undecided() {
        let e = draw_fraction(GameVersion::V1, &prm((1, 4), (1, 4)), 0, 50, &SeededStream::new(3));
        assert_eq!(e.fraction, 1.0);
    }

    #[test]
    fn fast_path_matches_grid() {
        let params = prm((1, 6), (1, 7));
        let labels = LabelSampler::new(&params);
        for v in GameVersion::ALL {
            for i in 0..40 {
                let s = SeededStream::new(11).derive(i);
                let grid = ClassGrid::solve(v, &params, 12, &s).unwrap();
                assert_eq!(grid.origin_class(), origin_class(v, &labels, 12, &s));
            }
        }
    }

    #[test]
    fn wilson_bounds() {
        let (lo, hi) = wilson_interval(0, 100);
        assert!(lo.abs() < 1e-12);
        assert!(hi > 0.0 && hi < 0.05);
        let (lo, hi) = wilson_interval(50, 100);
        assert!(lo < 0.5 && hi > 0.5);
    }
}
