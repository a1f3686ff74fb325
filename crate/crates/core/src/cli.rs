//! Command-line front end. The binary only parses arguments and calls
//! [`execute`]; everything else lives here so it can be tested.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::game::{draw_fraction, write_sweep_csv, GameVersion, SweepRow};
use crate::measures::{empirical_measure, stationary_conclusion_check};
use crate::params::{parse_rational, rat_string, Params, Rational};
use crate::pca::{trajectory, Alphabet, Boundary, Configuration, ModelSpec, Trajectory};
use crate::stream::SeededStream;
use crate::symbol::Symbol;
use crate::verify::{self, GridSpec, KERNEL_POINTS, MEASURE_SEED};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "percolation-pca", version, about = "Percolation games, their envelope automaton, and exact weight-function checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the binary automaton or its envelope and print per-step counts.
    Simulate(SimulateArgs),
    /// Estimate draw probabilities of a percolation game.
    Game(GameArgs),
    /// Run an exact verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// Final symbol densities of the envelope over a (p, q) grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Binary,
    Envelope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Init {
    Zeros,
    Ones,
    Qmarks,
    /// Fair coin flips from the seed.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemmas,
    Kernel,
    Formulas,
    Tables,
    Weights,
    Stationary,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Trap / zero probability, as "a/b", an integer or a decimal.
    #[arg(long, default_value = "1/4", allow_hyphen_values = true)]
    pub p: String,
    /// Target / one probability.
    #[arg(long, default_value = "1/4", allow_hyphen_values = true)]
    pub q: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = Model::Envelope)]
    pub model: Model,
    #[arg(long, value_enum, default_value_t = Init::Qmarks)]
    pub init: Init,
    #[arg(long, default_value_t = 1000)]
    pub width: usize,
    #[arg(long, default_value_t = 100)]
    pub steps: u64,
    /// Neighbourhood {i+offset, i+offset+1, i+offset+2}; -1 gives the centred rule.
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub offset: i64,
    /// Shrink the row by two sites per step instead of wrapping.
    #[arg(long)]
    pub light_cone: bool,
}

#[derive(Debug, Args)]
pub struct GameArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "v1")]
    pub version: String,
    /// Comma-separated horizons.
    #[arg(long, default_value = "10,50,100")]
    pub horizons: String,
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    /// `start:end:step` values of p (overrides --p).
    #[arg(long)]
    pub p_grid: Option<String>,
    /// `start:end:step` values of q (overrides --q).
    #[arg(long)]
    pub q_grid: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Single parameter point; overrides --grid when both --p and --q are given.
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// `coarse`, `fine`, `acceptance`/`decimal`, or a step such as `0.05`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Number of product and of reversible-Markov test measures (each).
    #[arg(long, default_value_t = 50)]
    pub measures: usize,
    #[arg(long, default_value_t = MEASURE_SEED)]
    pub seed: u64,
    /// Game version for the kernel suite (all four when absent).
    #[arg(long)]
    pub version: Option<String>,
    /// Include passing checks in the report.
    #[arg(long)]
    pub full: bool,
    /// Envelope width, steps and tolerance for the stationary check.
    #[arg(long, default_value_t = 10_000)]
    pub width: usize,
    #[arg(long, default_value_t = 1000)]
    pub steps: u64,
    #[arg(long, default_value_t = 0.01)]
    pub tol: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "0:1:1/4")]
    pub p_grid: String,
    #[arg(long, default_value = "0:1:1/4")]
    pub q_grid: String,
    #[arg(long, default_value_t = 1000)]
    pub width: usize,
    #[arg(long, default_value_t = 200)]
    pub steps: u64,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub offset: i64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Rendered output and whether every check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub success: bool,
    pub path: Option<PathBuf>,
}

/// Parses `start:end:step` (inclusive end) into exact values.
pub fn parse_range(s: &str) -> Result<Vec<Rational>> {
    let bad = || Error::Parse {
        what: "range start:end:step",
        input: s.to_string(),
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![parse_rational(single)?]),
        [a, b, step] => {
            let (a, b, step) = (parse_rational(a)?, parse_rational(b)?, parse_rational(step)?);
            if step <= Rational::from_integer(0.into()) {
                return Err(bad());
            }
            let mut out = Vec::new();
            let mut x = a;
            while x <= b {
                out.push(x.clone());
                x += &step;
            }
            Ok(out)
        }
        _ => Err(bad()),
    }
}

fn parse_horizons(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|h| {
            h.trim().parse().map_err(|_| Error::Parse {
                what: "horizon",
                input: h.to_string(),
            })
        })
        .collect()
}

fn initial_row(init: Init, width: usize, boundary: Boundary, seed: u64) -> Result<Configuration> {
    match init {
        Init::Zeros => Configuration::uniform(Symbol::Zero, width, boundary),
        Init::Ones => Configuration::uniform(Symbol::One, width, boundary),
        Init::Qmarks => Configuration::uniform(Symbol::Qmark, width, boundary),
        Init::Random => {
            let s = SeededStream::new(seed).derive(u64::MAX);
            let cells = (0..width as i64)
                .map(|n| if s.uniform(-1, n) < 0.5 { Symbol::Zero } else { Symbol::One })
                .collect();
            Configuration::new(cells, boundary)
        }
    }
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<Output> {
    let params = Params::parse(&a.common.p, &a.common.q)?;
    let alphabet = match a.model {
        Model::Binary => Alphabet::Binary,
        Model::Envelope => Alphabet::Envelope,
    };
    let model = ModelSpec::new(alphabet, a.offset, params.clone());
    let boundary = if a.light_cone { Boundary::LightCone } else { Boundary::Cyclic };
    let init = initial_row(a.init, a.width, boundary, a.common.seed)?;
    let tr: Trajectory = trajectory(&init, &model, a.steps, &SeededStream::new(a.common.seed))?;
    let text = match a.common.format {
        Format::Csv => tr.to_csv(),
        Format::Json => to_json(&json!({
            "version": verify::VERSION,
            "model": format!("{:?}", a.model).to_lowercase(),
            "offset": a.offset,
            "params": params,
            "seed": a.common.seed,
            "rows": tr.rows,
        })),
    };
    Ok(Output {
        text,
        success: true,
        path: a.common.out.clone(),
    })
}

pub fn cmd_game(a: &GameArgs) -> Result<Output> {
    let version: GameVersion = a.version.parse()?;
    let horizons = parse_horizons(&a.horizons)?;
    let ps = match &a.p_grid {
        Some(g) => parse_range(g)?,
        None => vec![parse_rational(&a.common.p)?],
    };
    let qs = match &a.q_grid {
        Some(g) => parse_range(g)?,
        None => vec![parse_rational(&a.common.q)?],
    };
    let stream = SeededStream::new(a.common.seed);
    let mut rows = Vec::new();
    for p in &ps {
        for q in &qs {
            let params = match Params::new(p.clone(), q.clone()) {
                Ok(params) => params,
                // grid points with p + q > 1 are skipped
                Err(_) if a.p_grid.is_some() || a.q_grid.is_some() => continue,
                Err(e) => return Err(e),
            };
            for h in &horizons {
                rows.push(SweepRow {
                    version,
                    p: rat_string(params.p()),
                    q: rat_string(params.q()),
                    estimate: draw_fraction(version, &params, *h, a.samples, &stream),
                    seed: a.common.seed,
                });
            }
        }
    }
    let text = match a.common.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_sweep_csv(&rows, &mut buf).expect("write to Vec");
            String::from_utf8(buf).expect("ascii")
        }
        Format::Json => to_json(&json!({ "version": verify::VERSION, "rows": rows })),
    };
    Ok(Output {
        text,
        success: true,
        path: a.common.out.clone(),
    })
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<Output> {
    let grid = match (&a.p, &a.q, &a.grid) {
        (Some(p), Some(q), _) => vec![Params::parse(p, q)?],
        (_, _, Some(g)) => g.parse::<GridSpec>()?.points(),
        _ => match a.suite {
            Suite::Lemmas => verify::LEMMA_POINTS
                .iter()
                .chain(KERNEL_POINTS.iter())
                .map(|(p, q)| Params::from_ratios(*p, *q).expect("valid"))
                .collect(),
            Suite::Kernel => KERNEL_POINTS
                .iter()
                .map(|(p, q)| Params::from_ratios(*p, *q).expect("valid"))
                .collect(),
            Suite::Stationary => vec![Params::from_ratios((1, 4), (1, 4)).expect("valid")],
            _ => GridSpec::Acceptance.points(),
        },
    };
    let report = match a.suite {
        Suite::Lemmas => serde_json::to_value(verify::lemma_suite(&grid, a.full)),
        Suite::Kernel => {
            let versions = match &a.version {
                Some(v) => vec![v.parse()?],
                None => GameVersion::ALL.to_vec(),
            };
            serde_json::to_value(verify::kernel_suite(&versions, &grid, a.full)?)
        }
        Suite::Formulas => {
            let ms = verify::suite_measures(a.measures, a.seed)?;
            serde_json::to_value(verify::formula_suite(&ms, &grid, Some(a.seed), a.full)?)
        }
        Suite::Tables => {
            let ms = verify::suite_measures(a.measures, a.seed)?;
            serde_json::to_value(verify::tables_suite(&ms, Some(a.seed), a.full)?)
        }
        Suite::Weights => {
            let ms = verify::suite_measures(a.measures, a.seed)?;
            serde_json::to_value(verify::weights_suite(&ms, &grid, Some(a.seed), a.full)?)
        }
        Suite::Stationary => {
            let mut reports = Vec::new();
            let mut all_ok = true;
            for params in &grid {
                let model = ModelSpec::envelope(params.clone());
                let init = Configuration::uniform(Symbol::Qmark, a.width, Boundary::Cyclic)?;
                let tr = trajectory(&init, &model, a.steps, &SeededStream::new(a.seed))?;
                let mu = empirical_measure(&tr.last, 5)?;
                let rep = stationary_conclusion_check(params, &mu)?;
                let ok = rep.gauge < a.tol && rep.max_forced() < a.tol;
                all_ok &= ok;
                reports.push(json!({ "report": rep, "passed": ok }));
            }
            Ok(json!({
                "suite": "stationary",
                "version": verify::VERSION,
                "seed": a.seed,
                "width": a.width,
                "steps": a.steps,
                "tolerance": a.tol,
                "passed": all_ok,
                "details": reports,
            }))
        }
    }
    .expect("reports serialise");
    let success = report["passed"].as_bool().unwrap_or(false);
    Ok(Output {
        text: to_json(&report),
        success,
        path: a.out.clone(),
    })
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<Output> {
    let ps = parse_range(&a.p_grid)?;
    let qs = parse_range(&a.q_grid)?;
    let mut csv = String::from("p,q,width,steps,seed,density0,densityQ,density1\n");
    let mut rows = Vec::new();
    for p in &ps {
        for q in &qs {
            let Ok(params) = Params::new(p.clone(), q.clone()) else {
                continue;
            };
            let model = ModelSpec::envelope(params.clone()).with_offset(a.offset);
            let init = Configuration::uniform(Symbol::Qmark, a.width, Boundary::Cyclic)?;
            let tr = trajectory(&init, &model, a.steps, &SeededStream::new(a.seed))?;
            let last = tr.rows.last().expect("at least the initial row");
            let d = [Symbol::Zero, Symbol::Qmark, Symbol::One].map(|s| last.density(s));
            writeln!(
                csv,
                "{},{},{},{},{},{},{},{}",
                rat_string(params.p()),
                rat_string(params.q()),
                a.width,
                a.steps,
                a.seed,
                d[0],
                d[1],
                d[2]
            )
            .expect("write to String");
            rows.push(json!({
                "params": params,
                "density0": d[0],
                "densityQ": d[1],
                "density1": d[2],
            }));
        }
    }
    let text = match a.format {
        Format::Csv => csv,
        Format::Json => to_json(&json!({
            "version": verify::VERSION,
            "width": a.width,
            "steps": a.steps,
            "offset": a.offset,
            "seed": a.seed,
            "rows": rows,
        })),
    };
    Ok(Output {
        text,
        success: true,
        path: a.out.clone(),
    })
}

pub fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Simulate(a) => cmd_simulate(a),
        Command::Game(a) => cmd_game(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

/// Runs a command line and writes the output; returns the process exit code
/// (0 success, 1 failed check, 2 usage or input error).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &out.path {
                Some(path) => std::fs::write(path, &out.text),
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(out.text.as_bytes())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 2;
            }
            if out.success {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
