//! Batch command-line front end. Every subcommand delegates to the library;
//! exit codes: 0 all checks passed, 1 a verification failed, 2 usage error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use noncrossing::bounds::{
    growth_constants, khinchin_constant, negativity_check, sequence_by_enumeration,
    sequence_by_series, SequenceKind,
};
use noncrossing::cumulants::{cumulants_to_moments, moments_to_cumulants, Assignment, Lattice};
use noncrossing::incidence::{mobius_nc, mobius_set};
use noncrossing::partitions::{partitions, Family, Partition};
use noncrossing::rat::{rat_to_string, ratio, Rat};
use noncrossing::verify::{run_suite, SuiteParams, SUITES};

#[derive(Parser)]
#[command(
    name = "noncrossing",
    about = "Exact combinatorics of set and noncrossing partitions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LatticeArg {
    Set,
    Nc,
}

impl From<LatticeArg> for Lattice {
    fn from(value: LatticeArg) -> Lattice {
        match value {
            LatticeArg::Set => Lattice::Set,
            LatticeArg::Nc => Lattice::Noncrossing,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    ToCumulants,
    ToMoments,
}

#[derive(Subcommand)]
enum Command {
    /// Lists all or noncrossing partitions of {1..n}, one per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// set = all partitions, nc = noncrossing only.
        #[arg(long, value_enum, default_value = "set")]
        lattice: LatticeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Möbius function value on an interval [sigma, pi].
    Mobius {
        /// Lower endpoint; defaults to the all-singletons partition.
        #[arg(long)]
        sigma: Option<String>,
        /// Upper endpoint; defaults to the one-block partition.
        #[arg(long)]
        pi: Option<String>,
        /// Ground-set size used by the defaults.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "nc")]
        lattice: LatticeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kreweras complement of a noncrossing partition.
    Kreweras {
        #[arg(long)]
        pi: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Moment/cumulant transform over the chosen lattice. Reads the JSON
    /// assignment format from --in or standard input and writes the same
    /// format.
    Transform {
        #[arg(long, value_enum, default_value = "to-cumulants")]
        direction: Direction,
        #[arg(long, value_enum, default_value = "nc")]
        lattice: LatticeArg,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth sequences a, atilde, b, btilde by both routes.
    Sequence {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        /// Copy parameter for b and btilde.
        #[arg(long = "N", default_value_t = 1)]
        param: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Singularity and growth constants for a copy parameter N.
    Constants {
        #[arg(long = "N", default_value_t = 1)]
        param: usize,
        /// Decimal digits shown for root approximations (display only).
        #[arg(long, default_value_t = 6)]
        precision: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs a verification suite and reports machine-readable results.
    Verify {
        /// One of: brillinger, product-formula, kreweras, schroeder,
        /// lp-constants, negativity, definetti, lemma-bound, roundtrip,
        /// singleton.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "N")]
        param: Option<usize>,
        #[arg(long, value_enum)]
        lattice: Option<LatticeArg>,
        /// Required for suites with random fixtures (roundtrip).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> noncrossing::Result<ExitCode> {
    match command {
        Command::Enumerate {
            n,
            lattice,
            format,
            out,
        } => {
            let family = match lattice {
                LatticeArg::Set => Family::All,
                LatticeArg::Nc => Family::Noncrossing,
            };
            let items: Vec<Partition> = partitions(n, family)?.collect();
            let text = match format {
                Format::Json => {
                    Value::Array(items.iter().map(|q| q.to_json()).collect()).to_string()
                }
                _ => items
                    .iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Mobius {
            sigma,
            pi,
            n,
            lattice,
            format,
            out,
        } => {
            let pi = match (pi, n) {
                (Some(text), _) => Partition::from_str(&text)?,
                (None, Some(n)) if n >= 1 => Partition::full(n),
                _ => return Err(noncrossing::Error::Parse("mobius needs --pi or --n".into())),
            };
            let sigma = match sigma {
                Some(text) => Partition::from_str(&text)?,
                None => Partition::singletons(pi.n()),
            };
            let value = match Lattice::from(lattice) {
                Lattice::Set => mobius_set(&sigma, &pi)?,
                Lattice::Noncrossing => mobius_nc(&sigma, &pi)?,
            };
            let text = match format {
                Format::Json => json!({
                    "sigma": sigma.to_string(),
                    "pi": pi.to_string(),
                    "lattice": Lattice::from(lattice).label(),
                    "mobius": rat_to_string(&value),
                })
                .to_string(),
                _ => rat_to_string(&value),
            };
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Kreweras { pi, format, out } => {
            let pi = Partition::from_str(&pi)?;
            let complement = pi.kreweras()?;
            let text = match format {
                Format::Json => json!({
                    "pi": pi.to_string(),
                    "kreweras": complement.to_string(),
                })
                .to_string(),
                _ => complement.to_string(),
            };
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform {
            direction,
            lattice,
            input,
            format: _,
            out,
        } => {
            let raw = match input {
                Some(path) => std::fs::read_to_string(path)
                    .map_err(|e| noncrossing::Error::Parse(format!("cannot read input: {e}")))?,
                None => {
                    let mut buffer = String::new();
                    std::io::stdin().read_to_string(&mut buffer).map_err(|e| {
                        noncrossing::Error::Parse(format!("cannot read stdin: {e}"))
                    })?;
                    buffer
                }
            };
            let value: Value = serde_json::from_str(&raw)
                .map_err(|e| noncrossing::Error::Parse(format!("malformed JSON: {e}")))?;
            let assignment = Assignment::from_json(&value)?;
            let lattice = Lattice::from(lattice);
            let transform = |a: &Assignment, pi: &Partition| match direction {
                Direction::ToCumulants => moments_to_cumulants(a, pi, lattice),
                Direction::ToMoments => cumulants_to_moments(a, pi, lattice),
            };
            let output = match &assignment {
                Assignment::Sequence(values) => {
                    let mut transformed = Vec::with_capacity(values.len());
                    for k in 1..=values.len() {
                        transformed.push(transform(&assignment, &Partition::full(k))?);
                    }
                    Assignment::Sequence(transformed)
                }
                Assignment::Table(map) => {
                    let mut transformed = std::collections::BTreeMap::new();
                    for pi in map.keys() {
                        transformed.insert(pi.clone(), transform(&assignment, pi)?);
                    }
                    Assignment::Table(transformed)
                }
            };
            emit(&output.to_json().to_string(), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Sequence {
            kind,
            n,
            param,
            format,
            out,
        } => {
            let kind = SequenceKind::from_str(&kind)?;
            let series = sequence_by_series(kind, n, param)?;
            let enumerated = if n <= 10 {
                Some(sequence_by_enumeration(kind, n, param)?)
            } else {
                None
            };
            let matches: Vec<bool> = match &enumerated {
                Some(e) => e.iter().zip(&series).map(|(a, b)| a == b).collect(),
                None => vec![true; n],
            };
            let all_match = matches.iter().all(|&ok| ok);
            let text = match format {
                Format::Csv => {
                    let mut lines = vec!["kind,n,N,enumeration,series,match".to_string()];
                    for i in 0..n {
                        lines.push(format!(
                            "{},{},{},{},{},{}",
                            kind.label(),
                            i + 1,
                            if kind.uses_parameter() {
                                param.to_string()
                            } else {
                                String::new()
                            },
                            enumerated
                                .as_ref()
                                .map(|e| rat_to_string(&e[i]))
                                .unwrap_or_default(),
                            rat_to_string(&series[i]),
                            matches[i],
                        ));
                    }
                    lines.join("\n")
                }
                Format::Json => json!({
                    "kind": kind.label(),
                    "n": n,
                    "N": if kind.uses_parameter() { json!(param) } else { Value::Null },
                    "enumeration": enumerated
                        .as_ref()
                        .map(|e| e.iter().map(rat_to_string).collect::<Vec<_>>()),
                    "series": series.iter().map(rat_to_string).collect::<Vec<_>>(),
                    "match": all_match,
                })
                .to_string(),
                Format::Text => series
                    .iter()
                    .map(rat_to_string)
                    .collect::<Vec<_>>()
                    .join(","),
            };
            emit(&text, out.as_deref())?;
            Ok(if all_match {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Constants {
            param,
            precision,
            format,
            out,
        } => {
            let width = display_width(precision);
            let constants = growth_constants(param, &width)?;
            let certified = if param >= 2 {
                Some(negativity_check(param, 16)?.certified)
            } else {
                None
            };
            let text = match format {
                Format::Csv => {
                    let khinchin = khinchin_constant(param)
                        .map(|v| format!("{v:.precision$}"))
                        .unwrap_or_default();
                    format!(
                        "N,z0_lo,z0_hi,khinchin,certified\n{},{},{},{},{}",
                        param,
                        rat_to_string(&constants.z0.lo),
                        rat_to_string(&constants.z0.hi),
                        khinchin,
                        certified.map(|c| c.to_string()).unwrap_or_default(),
                    )
                }
                Format::Json => json!({
                    "N": param,
                    "z0": format!("{:.precision$}", constants.z0.to_f64()),
                    "z0_lo": rat_to_string(&constants.z0.lo),
                    "z0_hi": rat_to_string(&constants.z0.hi),
                    "khinchin": constants.khinchin.map(|v| format!("{v:.precision$}")),
                    "b_growth": format!("{:.precision$}", constants.b_growth),
                    "pisier": constants.pisier.map(|v| format!("{v:.precision$}")),
                    "certified": certified,
                })
                .to_string(),
                Format::Text => {
                    let mut lines = vec![format!("z0 = {:.precision$}", constants.z0.to_f64())];
                    lines.push(format!("b_growth = {:.precision$}", constants.b_growth));
                    if let Some(k) = constants.khinchin {
                        lines.push(format!("khinchin = {k:.precision$}"));
                    }
                    if let Some(p) = constants.pisier {
                        lines.push(format!("pisier = {p:.precision$}"));
                    }
                    if let Some(c) = certified {
                        lines.push(format!("certified = {c}"));
                    }
                    lines.join("\n")
                }
            };
            emit(&text, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            n,
            param,
            lattice,
            seed,
            format,
            out,
        } => {
            if !SUITES.contains(&suite.as_str()) {
                return Err(noncrossing::Error::Parse(format!(
                    "unknown suite {suite:?}; expected one of {}",
                    SUITES.join(", ")
                )));
            }
            let report = run_suite(
                &suite,
                &SuiteParams {
                    n,
                    param_n: param,
                    lattice: lattice.map(Lattice::from),
                    seed,
                },
            )?;
            let text = match format {
                Format::Json => report.to_json().to_string(),
                Format::Csv => match csv_columns(&report.suite) {
                    Some(columns) => {
                        let mut lines = vec![columns.join(",")];
                        for row in &report.rows {
                            let cells: Vec<String> = columns
                                .iter()
                                .map(|key| match row.get(key) {
                                    Some(Value::String(s)) => csv_escape(s),
                                    Some(Value::Null) | None => String::new(),
                                    Some(other) => other.to_string(),
                                })
                                .collect();
                            lines.push(cells.join(","));
                        }
                        lines.join("\n")
                    }
                    None => {
                        let mut lines = vec!["suite,passed,failures".to_string()];
                        lines.push(format!(
                            "{},{},{}",
                            report.suite,
                            report.passed,
                            report.failures.len()
                        ));
                        lines.join("\n")
                    }
                },
                Format::Text => {
                    let mut lines = vec![format!(
                        "suite {}: {}",
                        report.suite,
                        if report.passed { "PASS" } else { "FAIL" }
                    )];
                    for failure in &report.failures {
                        lines.push(format!("  failure: {failure}"));
                    }
                    lines.join("\n")
                }
            };
            emit(&text, out.as_deref())?;
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

/// Quotes a CSV cell when it contains separators.
fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Column orders for suites whose rows form a flat table.
fn csv_columns(suite: &str) -> Option<&'static [&'static str]> {
    match suite {
        "definetti" => Some(&["pi", "rho", "N", "tv", "bound", "holds"]),
        "schroeder" => Some(&["kind", "n", "N", "enumeration", "series", "match"]),
        _ => None,
    }
}

/// Rational enclosure width giving at least the requested display digits.
fn display_width(precision: usize) -> Rat {
    let mut width = ratio(1, 10);
    for _ in 1..precision.clamp(1, 18) {
        width *= ratio(1, 10);
    }
    // Two guard digits so the midpoint is stable at the shown precision.
    width * ratio(1, 100)
}

fn emit(text: &str, out: Option<&std::path::Path>) -> noncrossing::Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| noncrossing::Error::Parse(format!("cannot write output: {e}"))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
