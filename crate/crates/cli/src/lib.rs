//! Command-line front end: argument parsing, report rendering and exit codes.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | a check failed (Euler mismatch, no shift found) |
//! | 2 | the braid or a move could not be parsed |
//! | 3 | invalid configuration or input |
//! | 4 | inconclusive: the q-window is too small to decide |

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use trigrad_core::algebra::{qt_expand, Bidegree, QSeries};
use trigrad_core::braid::{apply_markov, parse_braid, parse_move, BraidWord};
use trigrad_core::homfly::{homfly_f, homfly_f_tilde};
use trigrad_core::homology::{
    braid_homology, compare_series, compare_up_to_shift, euler_characteristic, hom_space_dim,
    matrix_homology, TriGradedDims,
};
use trigrad_core::koszul::{named_closed_matrix, named_open_matrix, CLOSED_NAMES, OPEN_NAMES};
use trigrad_core::{Error, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "trigrad",
    version,
    about = "Triply-graded homology and HOMFLYPT polynomials of braid closures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Triply-graded homology of a braid closure.
    Homology {
        #[command(flatten)]
        braid: BraidArgs,
        #[command(flatten)]
        common: Common,
    },
    /// HOMFLYPT polynomial F and its normalized form.
    Homfly {
        #[command(flatten)]
        braid: BraidArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Compares the Euler characteristic of the homology with F.
    EulerCheck {
        #[command(flatten)]
        braid: BraidArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Compares the homology before and after a sequence of Markov moves.
    Invariance {
        #[command(flatten)]
        braid: BraidArgs,
        /// A move such as `conjugate:1`, `stabilize+`, `stabilize-`,
        /// `braid-relation:0`, `far-commute:1`, `cancel-pair:0`,
        /// `insert-pair:0:1` or `destabilize`. Repeatable.
        #[arg(long = "move", value_name = "MOVE", required = true)]
        moves: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Dimension of a hom space between two named open graphs.
    HomDim {
        /// Source graph.
        source: String,
        /// Target graph.
        target: String,
        /// The a-grading of the requested slice.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        k: i32,
        /// The q-grading of the requested slice.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        l: i32,
        #[command(flatten)]
        common: Common,
    },
    /// Homology of a named closed graph.
    GraphHomology {
        /// One of circle, theta, upsilon-closure, gamma1-closure .. gamma4-closure.
        name: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
pub struct BraidArgs {
    /// Braid word: signed generator indices such as "1 -2 1", optionally
    /// prefixed by `n=<strands>`.
    #[arg(allow_hyphen_values = true)]
    pub braid: String,
    /// Number of strands (defaults to one more than the largest generator).
    #[arg(long)]
    pub strands: Option<usize>,
    /// Reduced homology: the basepoint variable is set to zero.
    #[arg(long)]
    pub reduced: bool,
    /// Strand (1-based) carrying the basepoint.
    #[arg(long, default_value_t = 1)]
    pub basepoint: usize,
    /// Marks on every closure segment.
    #[arg(long, default_value_t = 1)]
    pub marks: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Highest q-degree computed; everything up to it is exact.
    #[arg(long, default_value_t = 12, allow_negative_numbers = true)]
    pub qmax: i32,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Write the report to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, env = "TRIGRAD_WORKERS")]
    pub workers: Option<usize>,
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Homology { common, .. }
            | Command::Homfly { common, .. }
            | Command::EulerCheck { common, .. }
            | Command::Invariance { common, .. }
            | Command::HomDim { common, .. }
            | Command::GraphHomology { common, .. } => common,
        }
    }
}

/// A failure that ends the run with a non-zero exit code and no report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::LetterOutOfRange { .. } => EXIT_PARSE,
            Error::Inconclusive(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_CONFIG,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// A rendered report together with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

/// Homology dimensions and Euler characteristic as emitted in JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub braid: String,
    pub reduced: bool,
    pub qmax: i32,
    /// `[j, k, l, dim]`, sorted.
    pub dims: Vec<[i64; 4]>,
    pub euler: Vec<EulerEntry>,
}

/// `(l, [(t_exp, coefficient)])`, with exact rational coefficients as strings.
pub type EulerEntry = (i32, Vec<(i32, String)>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub graph: String,
    pub qmax: i32,
    pub dims: Vec<[i64; 4]>,
    pub euler: Vec<EulerEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomflyReport {
    pub braid: String,
    #[serde(rename = "F")]
    pub f: String,
    #[serde(rename = "F_tilde")]
    pub f_tilde: String,
    pub qmax: i32,
    pub series: Vec<EulerEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub braid: String,
    pub qmax: i32,
    pub passed: bool,
    pub first_mismatch: Option<i32>,
    pub homology: Vec<EulerEntry>,
    pub oracle: Vec<EulerEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub braid: String,
    pub transformed: String,
    pub moves: Vec<String>,
    pub qmax: i32,
    pub shift: Option<(i32, i32, i32)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDimReport {
    pub source: String,
    pub target: String,
    pub bidegree: (i32, i32),
    pub dim: usize,
}

pub fn dims_rows(h: &TriGradedDims) -> Vec<[i64; 4]> {
    h.dims
        .iter()
        .map(|(&(j, k, l), &d)| [j as i64, k as i64, l as i64, d as i64])
        .collect()
}

pub fn series_rows(s: &QSeries) -> Vec<EulerEntry> {
    s.coeffs
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(&l, c)| {
            let mut ts: Vec<(i32, String)> =
                c.terms().map(|(&(_, te), x)| (te, x.to_string())).collect();
            ts.sort();
            (l, ts)
        })
        .collect()
}

/// `Σ dim · t^k q^l s^j` with `s` marking the cube degree.
pub fn poincare_polynomial(h: &TriGradedDims) -> String {
    let mut terms: Vec<((i32, i32, i32), usize)> = h
        .dims
        .iter()
        .map(|(&(j, k, l), &d)| ((l, k, j), d))
        .collect();
    terms.sort();
    if terms.is_empty() {
        return "0".into();
    }
    let factor = |v: &str, e: i32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    terms
        .iter()
        .map(|&((l, k, j), d)| {
            let parts: Vec<String> = [factor("t", k), factor("q", l), factor("s", j)]
                .into_iter()
                .filter(|p| !p.is_empty())
                .collect();
            match (d, parts.is_empty()) {
                (_, true) => d.to_string(),
                (1, false) => parts.join(" "),
                _ => format!("{d} {}", parts.join(" ")),
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn render_series(s: &[EulerEntry]) -> String {
    let mut out = String::new();
    for (l, ts) in s {
        let poly: Vec<String> = ts.iter().map(|(e, c)| format!("{c}*t^{e}")).collect();
        let _ = writeln!(out, "  q^{l}: {}", poly.join(" + "));
    }
    out
}

fn render_dims(out: &mut String, h: &TriGradedDims) {
    let _ = writeln!(out, "dims (j k l: dim):");
    for (&(j, k, l), &d) in &h.dims {
        let _ = writeln!(out, "  {j} {k} {l}: {d}");
    }
    let _ = writeln!(out, "poincare: {}", poincare_polynomial(h));
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("reports serialize");
    s.push('\n');
    s
}

fn braid_of(a: &BraidArgs) -> Result<BraidWord, Failure> {
    Ok(parse_braid(&a.braid, a.strands)?)
}

/// Validates the shared options and builds the engine configuration.
pub fn run_config(a: Option<&BraidArgs>, c: &Common) -> Result<RunConfig, Failure> {
    if c.qmax < 1 {
        return Err(Failure::config(format!(
            "qmax must be at least 1, got {}",
            c.qmax
        )));
    }
    let workers = worker_count(c)?;
    let mut cfg = RunConfig {
        qmax: c.qmax,
        workers,
        ..RunConfig::default()
    };
    if let Some(a) = a {
        if a.marks < 1 {
            return Err(Failure::config("marks must be at least 1"));
        }
        cfg.reduced = a.reduced;
        cfg.basepoint = a.basepoint;
        cfg.marks_per_segment = a.marks;
    }
    Ok(cfg)
}

pub fn worker_count(c: &Common) -> Result<usize, Failure> {
    match c.workers {
        Some(0) => Err(Failure::config("workers must be at least 1")),
        Some(w) => Ok(w),
        None => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Runs a parsed command inside a pool of the configured size.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let workers = worker_count(cli.command.common())?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure::config(format!("cannot start {workers} workers: {e}")))?;
    pool.install(|| execute(&cli.command))
}

fn ok(output: String) -> Outcome {
    Outcome {
        output,
        code: EXIT_OK,
    }
}

fn execute(cmd: &Command) -> Result<Outcome, Failure> {
    match cmd {
        Command::Homology { braid, common } => {
            let cfg = run_config(Some(braid), common)?;
            let b = braid_of(braid)?;
            let h = braid_homology(&b, &cfg)?;
            let report = HomologyReport {
                braid: b.to_string(),
                reduced: cfg.reduced,
                qmax: cfg.qmax,
                dims: dims_rows(&h),
                euler: series_rows(&euler_characteristic(&h)),
            };
            if common.json {
                return Ok(ok(to_json(&report)));
            }
            let mut out = format!(
                "braid: {}\nreduced: {}\nqmax: {}\n",
                report.braid, report.reduced, report.qmax
            );
            render_dims(&mut out, &h);
            Ok(ok(out))
        }
        Command::Homfly { braid, common } => {
            let cfg = run_config(Some(braid), common)?;
            let b = braid_of(braid)?;
            let f = homfly_f(&b)?;
            let ft = homfly_f_tilde(&b)?;
            let report = HomflyReport {
                braid: b.to_string(),
                f: f.to_string(),
                f_tilde: ft.to_string(),
                qmax: cfg.qmax,
                series: series_rows(&qt_expand(&f, cfg.qmax)?),
            };
            if common.json {
                return Ok(ok(to_json(&report)));
            }
            Ok(ok(format!(
                "braid: {}\nF = {}\nF~ = {}\n",
                report.braid, report.f, report.f_tilde
            )))
        }
        Command::EulerCheck { braid, common } => {
            let cfg = run_config(Some(braid), common)?;
            let b = braid_of(braid)?;
            let cfg = RunConfig {
                reduced: false,
                ..cfg
            };
            let h = braid_homology(&b, &cfg)?;
            let oracle = qt_expand(&homfly_f(&b)?, cfg.qmax)?;
            let cmp = compare_series(euler_characteristic(&h), oracle);
            let report = EulerReport {
                braid: b.to_string(),
                qmax: cfg.qmax,
                passed: cmp.passed(),
                first_mismatch: cmp.first_mismatch,
                homology: series_rows(&cmp.homology),
                oracle: series_rows(&cmp.oracle),
            };
            let code = if report.passed {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            };
            if common.json {
                return Ok(Outcome {
                    output: to_json(&report),
                    code,
                });
            }
            let mut out = format!("braid: {}\nqmax: {}\n", report.braid, report.qmax);
            match cmp.first_mismatch {
                None => out.push_str("euler check: PASS\n"),
                Some(l) => {
                    let _ = writeln!(out, "euler check: FAIL at q^{l}");
                    let _ = writeln!(out, "  homology: {}", cmp.homology.coeff(l));
                    let _ = writeln!(out, "  oracle:   {}", cmp.oracle.coeff(l));
                }
            }
            out.push_str("homology series:\n");
            out.push_str(&render_series(&report.homology));
            Ok(Outcome { output: out, code })
        }
        Command::Invariance {
            braid,
            moves,
            common,
        } => {
            let cfg = run_config(Some(braid), common)?;
            let b = braid_of(braid)?;
            let mut t = b.clone();
            for m in moves {
                t = apply_markov(&t, &parse_move(m)?)?;
            }
            let h1 = braid_homology(&b, &cfg)?;
            let h2 = braid_homology(&t, &cfg)?;
            let shift = compare_up_to_shift(&h1, &h2)?;
            let report = InvarianceReport {
                braid: b.to_string(),
                transformed: t.to_string(),
                moves: moves.clone(),
                qmax: cfg.qmax,
                shift,
            };
            let code = if shift.is_some() {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            };
            if common.json {
                return Ok(Outcome {
                    output: to_json(&report),
                    code,
                });
            }
            let verdict = match shift {
                Some((j, k, l)) => format!("equal up to shift ({j},{k},{l})"),
                None => "no shift matches".into(),
            };
            Ok(Outcome {
                output: format!(
                    "braid: {}\ntransformed: {}\nqmax: {}\nresult: {verdict}\n",
                    report.braid, report.transformed, report.qmax
                ),
                code,
            })
        }
        Command::HomDim {
            source,
            target,
            k,
            l,
            common,
        } => {
            run_config(None, common)?;
            let named = |s: &str| {
                let name = if s == "S" { "S2" } else { s };
                named_open_matrix(name).map_err(|_| {
                    Failure::config(format!(
                        "unknown graph {s}; expected S or one of {}",
                        OPEN_NAMES.join(", ")
                    ))
                })
            };
            let dim = hom_space_dim(&named(source)?, &named(target)?, Bidegree::new(*k, *l))?;
            let report = HomDimReport {
                source: source.clone(),
                target: target.clone(),
                bidegree: (*k, *l),
                dim,
            };
            if common.json {
                return Ok(ok(to_json(&report)));
            }
            Ok(ok(format!(
                "dim Hom({source}, {target}) at ({k},{l}) = {dim}\n"
            )))
        }
        Command::GraphHomology { name, common } => {
            let cfg = run_config(None, common)?;
            let m = named_closed_matrix(name).map_err(|_| {
                Failure::config(format!(
                    "unknown graph {name}; expected one of {}",
                    CLOSED_NAMES.join(", ")
                ))
            })?;
            let h = matrix_homology(&m, cfg.qmax)?;
            let report = GraphReport {
                graph: name.clone(),
                qmax: cfg.qmax,
                dims: dims_rows(&h),
                euler: series_rows(&euler_characteristic(&h)),
            };
            if common.json {
                return Ok(ok(to_json(&report)));
            }
            let mut out = format!("graph: {name}\nqmax: {}\n", cfg.qmax);
            render_dims(&mut out, &h);
            Ok(ok(out))
        }
    }
}

/// Dimensions from a JSON `dims` array, keyed by `(j,k,l)`.
pub fn dims_from_rows(rows: &[[i64; 4]]) -> BTreeMap<(i32, i32, i32), usize> {
    rows.iter()
        .map(|r| ((r[0] as i32, r[1] as i32, r[2] as i32), r[3] as usize))
        .collect()
}
