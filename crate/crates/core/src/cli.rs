//! Command-line front end. Every command prints one artifact (table, CSV or
//! JSON) to stdout or `--output`; JSON artifacts carry `schema_version` and a
//! `mode` tag.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::convexify::{self, BoundMode};
use crate::counterexample::{self, CertifyOptions, VerifyOptions};
use crate::decompose::{self, Decomposition};
use crate::error::{Error, Result};
use crate::exhaust;
use crate::gauges::{parse_gauge, GaugeSpec};
use crate::rng::DEFAULT_SEED;
use crate::vector::{Mode, Vector};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ASSERTION: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "gaugehull", version, about = "Gauges, decomposition gauges and hull gauges with certified bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Defaults to `json` for `certify` and `table` otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a gauge at a vector.
    Eval {
        #[arg(long)]
        gauge: String,
        #[arg(long)]
        x: String,
    },
    /// Upper bounds of h^(1), ..., h^(m_max) at a vector.
    Chain {
        #[arg(long)]
        gauge: String,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 4)]
        m_max: usize,
        #[arg(long, default_value_t = 16)]
        restarts: usize,
    },
    /// Hull gauge bracket: LP upper bound and polar lower bound.
    Hull {
        #[arg(long)]
        gauge: String,
        #[arg(long)]
        x: String,
        /// Sampled dictionary directions.
        #[arg(long, default_value_t = 512)]
        count: usize,
        /// Polar grid step of the certified lower bound.
        #[arg(long, default_value_t = 1e-3)]
        grid_step: f64,
        #[arg(long, default_value_t = 20_000)]
        samples: usize,
    },
    /// Carathéodory reduction of a decomposition read from JSON.
    Reduce {
        #[arg(long)]
        gauge: String,
        #[arg(long)]
        input: PathBuf,
    },
    /// Gauges of the exhaustion levels B_j at a vector.
    Exhaust {
        #[arg(long)]
        gauge: String,
        #[arg(long)]
        x: String,
        /// Comma-separated levels, or `a..b` for a range.
        #[arg(long, default_value = "1,2,4,8,16,32,64,128,256")]
        j_list: String,
    },
    /// Whether a point of the hull face of D_n is a witness.
    Witness {
        #[arg(long)]
        n: usize,
        /// A vector, or `centroid`.
        #[arg(long)]
        y: String,
    },
    /// Certify h^(2n-2)(y) > 1 = hull gauge at a witness of D_2.
    Certify {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "centroid")]
        y: String,
        #[arg(long, default_value_t = 0.01)]
        grid_step: f64,
        #[arg(long, default_value_t = 32)]
        restarts: usize,
        #[arg(long, default_value_t = 50_000)]
        samples: usize,
    },
    /// Compare h^(2n-1) with the hull gauge of D_n on random points.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        count: Option<usize>,
    },
}

/// A rendered artifact and the exit status it implies.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub status: i32,
}

fn load_gauge(text: &str) -> Result<GaugeSpec> {
    let t = text.trim();
    if t.starts_with('{') || !std::path::Path::new(t).is_file() {
        parse_gauge(t)
    } else {
        parse_gauge(&fs::read_to_string(t)?)
    }
}

fn load_vector(g: &GaugeSpec, text: &str) -> Result<Vector> {
    let v = Vector::parse(text, g.mode())?;
    g.check_vector(&v)?;
    Ok(v)
}

fn witness_point(n: usize, text: &str) -> Result<Vector> {
    if text.trim() == "centroid" {
        Ok(counterexample::centroid(n))
    } else {
        Vector::parse(text, Mode::Complex)
    }
}

fn parse_j_list(text: &str) -> Result<Vec<usize>> {
    let bad = |s: &str| Error::Input(format!("bad level {s:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad(a))?;
        let b: usize = b.trim().parse().map_err(|_| bad(b))?;
        if a == 0 || b < a {
            return Err(Error::Input(format!("bad level range {text:?}")));
        }
        return Ok((a..=b).collect());
    }
    let list: Vec<usize> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| bad(s)))
        .collect::<Result<_>>()?;
    if list.is_empty() {
        return Err(Error::Input("empty level list".into()));
    }
    Ok(list)
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::Input(format!("--{name} must be positive")));
    }
    Ok(())
}

fn envelope<T: Serialize>(command: &str, mode: &str, result: &T) -> Result<String> {
    let value = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "mode": mode,
        "result": serde_json::to_value(result)?,
    });
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

fn mode_name(m: BoundMode) -> &'static str {
    match m {
        BoundMode::Certified => "certified",
        BoundMode::Heuristic => "heuristic",
    }
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::Input(format!("--format {format:?} is not available for {command}").to_lowercase())
}

/// Runs one command and renders its artifact.
pub fn execute(cli: &Cli) -> Result<Output> {
    let ok = |text: String| Output { text, status: EXIT_OK };
    let seed = cli.seed;
    let format = cli.format.unwrap_or(Format::Table);
    match &cli.command {
        Command::Eval { gauge, x } => {
            let g = load_gauge(gauge)?;
            let x = load_vector(&g, x)?;
            let value = g.eval(&x)?;
            Ok(ok(match format {
                Format::Table => format!("{value}\n"),
                Format::Csv => format!("value\n{value}\n"),
                Format::Json => envelope(
                    "eval",
                    "exact",
                    &json!({ "gauge": g, "x": x, "value": value }),
                )?,
            }))
        }
        Command::Chain { gauge, x, m_max, restarts } => {
            positive("m-max", *m_max)?;
            positive("restarts", *restarts)?;
            let g = load_gauge(gauge)?;
            let x = load_vector(&g, x)?;
            let chain = decompose::gauge_chain(&g, &x, *m_max, *restarts, seed)?;
            Ok(ok(match format {
                Format::Table => {
                    let mut s = String::from("   m  upper bound (heuristic)\n");
                    for e in &chain {
                        s.push_str(&format!("{:>4}  {:.12}\n", e.m, e.value));
                    }
                    s
                }
                Format::Csv => {
                    let mut s = String::from("m,value\n");
                    for e in &chain {
                        s.push_str(&format!("{},{:.12}\n", e.m, e.value));
                    }
                    s
                }
                Format::Json => envelope("chain", "heuristic", &json!({ "gauge": g, "x": x, "chain": chain }))?,
            }))
        }
        Command::Hull { gauge, x, count, grid_step, samples } => {
            positive("count", *count)?;
            positive("samples", *samples)?;
            let g = load_gauge(gauge)?;
            let x = load_vector(&g, x)?;
            if x.is_zero() {
                return Err(Error::Input("hull target must be nonzero".into()));
            }
            let b = convexify::hull_bracket(&g, &x, *count, *grid_step, *samples, seed)?;
            let mode = mode_name(b.lower.mode);
            Ok(ok(match format {
                Format::Table => format!(
                    "upper  {:.12}  (LP over {} atoms)\nlower  {:.12}  ({mode})\nwidth  {:.3e}\n",
                    b.upper.value,
                    b.upper.lp.atoms_used,
                    b.lower.value,
                    b.width()
                ),
                Format::Csv => format!(
                    "upper,lower,mode\n{:.12},{:.12},{mode}\n",
                    b.upper.value, b.lower.value
                ),
                Format::Json => envelope("hull", mode, &json!({ "gauge": g, "x": x, "bracket": b }))?,
            }))
        }
        Command::Reduce { gauge, input } => {
            let g = load_gauge(gauge)?;
            let d: Decomposition = serde_json::from_str(&fs::read_to_string(input)?)?;
            d.validate(&g)?;
            let r = decompose::caratheodory_reduce(&g, &d)?;
            Ok(ok(match format {
                Format::Json => envelope("reduce", "exact", &r)?,
                Format::Table => format!(
                    "atoms  {} -> {}\nvalue  {:.12} -> {:.12}\n",
                    d.len(),
                    r.len(),
                    d.value,
                    r.value
                ),
                Format::Csv => return Err(unsupported(format, "reduce")),
            }))
        }
        Command::Exhaust { gauge, x, j_list } => {
            let g = load_gauge(gauge)?;
            let x = load_vector(&g, x)?;
            let js = parse_j_list(j_list)?;
            let rows = exhaust::convergence_scan(&g, &x, &js)?;
            Ok(ok(match format {
                Format::Csv => exhaust::scan_to_csv(&rows),
                Format::Table => {
                    let mut s = String::from("   j  gauge of B_j (heuristic)\n");
                    for r in &rows {
                        s.push_str(&format!("{:>4}  {:.12}\n", r.j, r.value));
                    }
                    s
                }
                Format::Json => envelope(
                    "exhaust",
                    "heuristic",
                    &json!({
                        "gauge": g,
                        "x": x,
                        "scale": exhaust::normalization_scale(&g),
                        "rows": rows,
                    }),
                )?,
            }))
        }
        Command::Witness { n, y } => {
            let y = witness_point(*n, y)?;
            let check = counterexample::witness_check(*n, &y)?;
            Ok(ok(match format {
                Format::Table => format!(
                    "witness  {}\nsubsets  {}\n",
                    check.witness, check.subsets_checked
                ),
                Format::Csv => format!("witness,subsets\n{},{}\n", check.witness, check.subsets_checked),
                Format::Json => envelope("witness", "exact", &json!({ "n": n, "y": y, "check": check }))?,
            }))
        }
        Command::Certify { n, y, grid_step, restarts, samples } => {
            positive("restarts", *restarts)?;
            positive("samples", *samples)?;
            let y = witness_point(*n, y)?;
            let opts = CertifyOptions {
                grid_step: *grid_step,
                restarts: *restarts,
                lipschitz_samples: *samples,
                seed,
                ..CertifyOptions::default()
            };
            let report = counterexample::certify_gap(*n, &y, &opts)?;
            let status = if report.passed { EXIT_OK } else { EXIT_ASSERTION };
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => envelope("certify", mode_name(report.mode), &report)?,
                Format::Table => report.table(),
                Format::Csv => return Err(unsupported(Format::Csv, "certify")),
            };
            Ok(Output { text, status })
        }
        Command::Verify { n, samples, restarts, count } => {
            positive("samples", *samples)?;
            let mut opts = VerifyOptions::for_dimension(*n);
            if let Some(r) = restarts {
                positive("restarts", *r)?;
                opts.restarts = *r;
            }
            if let Some(c) = count {
                positive("count", *c)?;
                opts.dictionary = *c;
            }
            let report = counterexample::verify_theorem(*n, *samples, seed, &opts)?;
            let status = if report.passed { EXIT_OK } else { EXIT_ASSERTION };
            let text = match format {
                Format::Table => report.table(),
                Format::Csv => report.csv(),
                Format::Json => envelope("verify", mode_name(report.mode), &report)?,
            };
            Ok(Output { text, status })
        }
    }
}

/// Exit status for an error.
pub fn error_status(e: &Error) -> i32 {
    match e {
        Error::Input(_)
        | Error::DimensionMismatch { .. }
        | Error::Json(_)
        | Error::Precondition(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Executes, writes the artifact and returns the process exit status.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => fs::write(path, &out.text),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => out.status,
                Err(e) => {
                    eprintln!("error: {e}");
                    EXIT_FAILURE
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_status(&e)
        }
    }
}

/// Parses `args` (including the program name) and runs.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            }
        }
    }
}
