//! The `ciu` command-line front end.
//!
//! Exit codes: 0 success or entailment holds, 1 countermodel found or not
//! isomorphic, 2 usage or parse error, 3 resource limit, 4 oracle disagreement.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::consequence::{self, Countermodel, EntailmentVerdict};
use crate::error::Error;
use crate::fibword::{expansion, fib};
use crate::formula::{parse, parse_sequent, Sequent};
use crate::matrix::{self, find_isomorphism, materialize, render_coords, GenericMatrix};
use crate::sample::Sampler;
use crate::Limits;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Matrix,
    Bival,
    Both,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub max_support: u64,
    pub max_evals: u64,
    pub output_format: OutputFormat,
    pub rng_seed: u64,
    pub jobs: usize,
}

impl CliConfig {
    pub fn limits(&self) -> Limits {
        Limits {
            max_support: self.max_support,
            max_evals: self.max_evals,
            jobs: self.jobs,
            ..Limits::default()
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ciu",
    version,
    about = "Finite matrices and bivaluations for the Ciu^n hierarchy"
)]
struct Args {
    /// Largest support |A_n| that may be built
    #[arg(long, global = true, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_support: u64,

    /// Largest number of valuations one query may enumerate
    #[arg(long, global = true, env = "CIU_MAX_EVALS", default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_evals: u64,

    /// Output format for `gen` and `report`
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Seed for sampled commands
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for enumeration
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=256))]
    jobs: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the matrix M_n
    Gen {
        n: usize,
        /// Write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide a sequent such as "p, ~p |- q"
    Entails {
        n: usize,
        sequent: String,
        #[arg(long, value_enum, default_value_t = Oracle::Matrix)]
        oracle: Oracle,
    },
    /// Decide whether a formula is designated under every valuation
    Taut { n: usize, formula: String },
    /// Cardinalities and paraconsistency verdicts for 0..=n_max
    Report { n_max: usize },
    /// Search for an isomorphism between two matrix JSON files
    Iso { a: PathBuf, b: PathBuf },
    /// Print the k-th Fibonacci number
    Fib {
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// Print the k-th word of the binary expansion
    FibWord {
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// Compare both deciders on random sequents
    EquivCheck {
        n: usize,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=8))]
        atoms: u64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = 500)]
        samples: usize,
    },
}

const ATOM_NAMES: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => EXIT_LIMIT,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let config = CliConfig {
        max_support: args.max_support,
        max_evals: args.max_evals,
        output_format: args.format,
        rng_seed: args.seed,
        jobs: args.jobs as usize,
    };
    match dispatch(args.command, &config, out) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

fn dispatch(command: Command, config: &CliConfig, out: &mut dyn Write) -> CmdResult {
    let limits = config.limits();
    match command {
        Command::Gen { n, out: path } => cmd_gen(n, config.output_format, path, &limits, out),
        Command::Entails { n, sequent, oracle } => {
            let s = parse_sequent(&sequent)?;
            cmd_entails(n, &s, oracle, &limits, out)
        }
        Command::Taut { n, formula } => {
            let s = Sequent::new(Vec::new(), parse(&formula)?);
            cmd_entails(n, &s, Oracle::Matrix, &limits, out)
        }
        Command::Report { n_max } => cmd_report(n_max, config.output_format, &limits, out),
        Command::Iso { a, b } => cmd_iso(&a, &b, out),
        Command::Fib { k } => {
            writeln!(out, "{}", fib(positive_index(k)?)?)?;
            Ok(EXIT_OK)
        }
        Command::FibWord { k } => {
            let k = u32::try_from(positive_index(k)?).unwrap_or(u32::MAX);
            writeln!(out, "{}", expansion(k, &limits)?)?;
            Ok(EXIT_OK)
        }
        Command::EquivCheck {
            n,
            atoms,
            depth,
            samples,
        } => cmd_equiv_check(
            n,
            &ATOM_NAMES[..atoms as usize],
            depth,
            samples,
            config.rng_seed,
            &limits,
            out,
        ),
    }
}

fn positive_index(k: i64) -> Result<u64, Error> {
    u64::try_from(k)
        .ok()
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::Domain(format!("index must be at least 1, got {k}")))
}

fn cmd_gen(
    n: usize,
    format: OutputFormat,
    path: Option<PathBuf>,
    limits: &Limits,
    out: &mut dyn Write,
) -> CmdResult {
    let m = materialize(&matrix::build_matrix(n, limits)?, limits)?;
    let text = match format {
        OutputFormat::Json => format!("{}\n", m.to_json()),
        OutputFormat::Table => m.to_table_text(),
    };
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn write_verdict(out: &mut dyn Write, v: &EntailmentVerdict) -> std::io::Result<()> {
    if v.holds {
        writeln!(out, "holds ({} valuations examined)", v.examined)
    } else {
        writeln!(out, "fails (countermodel at valuation {})", v.examined)?;
        if let Some(cm) = &v.countermodel {
            write_countermodel(out, cm)?;
        }
        Ok(())
    }
}

fn write_countermodel(out: &mut dyn Write, cm: &Countermodel) -> std::io::Result<()> {
    for (atom, value) in cm.assignment() {
        writeln!(out, "{atom} = {value}")?;
    }
    Ok(())
}

fn cmd_entails(
    n: usize,
    s: &Sequent,
    oracle: Oracle,
    limits: &Limits,
    out: &mut dyn Write,
) -> CmdResult {
    let code = |v: &EntailmentVerdict| if v.holds { EXIT_OK } else { EXIT_NEGATIVE };
    match oracle {
        Oracle::Matrix => {
            let v = consequence::entails_matrix(n, s, limits)?;
            write_verdict(out, &v)?;
            Ok(code(&v))
        }
        Oracle::Bival => {
            let v = consequence::entails_bival(n, s, limits)?;
            write_verdict(out, &v)?;
            Ok(code(&v))
        }
        Oracle::Both => {
            let c = consequence::cross_check(n, s, limits)?;
            if c.agree() {
                writeln!(out, "oracles agree")?;
                write_verdict(out, &c.matrix)?;
                Ok(code(&c.matrix))
            } else {
                writeln!(out, "oracles disagree")?;
                write!(out, "matrix: ")?;
                write_verdict(out, &c.matrix)?;
                write!(out, "bival: ")?;
                write_verdict(out, &c.bival)?;
                Ok(EXIT_DISAGREE)
            }
        }
    }
}

/// One line of `ciu report`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub n: usize,
    pub support: u64,
    pub fib_n_plus_3: u64,
    pub designated: u64,
    pub explosion: bool,
    pub dne: bool,
}

/// Rows of `ciu report` and whether every expected invariant holds.
pub fn report_rows(n_max: usize, limits: &Limits) -> Result<(Vec<ReportRow>, bool), Error> {
    let verdicts = consequence::paraconsistency_report(n_max, limits)?;
    let mut ok = verdicts.as_expected();
    let mut rows: Vec<ReportRow> = Vec::new();
    for (n, v) in verdicts.rows.iter().enumerate() {
        let support = matrix::build_support_recursive(n, limits)?.len() as u64;
        let designated = matrix::designated_set(n, limits)?.len() as u64;
        let fib_n_plus_3 = fib(n as u64 + 3)?;
        ok &= support == fib_n_plus_3;
        ok &= match rows.last() {
            Some(prev) => designated == prev.support,
            None => designated == 1,
        };
        rows.push(ReportRow {
            n,
            support,
            fib_n_plus_3,
            designated,
            explosion: v.explosion.holds,
            dne: v.dne.holds,
        });
    }
    Ok((rows, ok))
}

fn cmd_report(
    n_max: usize,
    format: OutputFormat,
    limits: &Limits,
    out: &mut dyn Write,
) -> CmdResult {
    let (rows, ok) = report_rows(n_max, limits)?;
    match format {
        OutputFormat::Json => {
            let text = serde_json::to_string(&rows).expect("rows serialize");
            writeln!(out, "{text}")?;
        }
        OutputFormat::Table => {
            let word = |b: bool| if b { "holds" } else { "fails" };
            writeln!(
                out,
                "{:>3} {:>10} {:>10} {:>10}  {:<9}  dne",
                "n", "|A_n|", "fib(n+3)", "|D_n|", "explosion"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:>3} {:>10} {:>10} {:>10}  {:<9}  {}",
                    r.n,
                    r.support,
                    r.fib_n_plus_3,
                    r.designated,
                    word(r.explosion),
                    word(r.dne)
                )?;
            }
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn read_matrix(path: &PathBuf) -> std::result::Result<GenericMatrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    GenericMatrix::from_json(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn cmd_iso(a: &PathBuf, b: &PathBuf, out: &mut dyn Write) -> CmdResult {
    let (ma, mb) = (read_matrix(a)?, read_matrix(b)?);
    match find_isomorphism(&ma, &mb)? {
        Some(f) => {
            let identity = f.iter().enumerate().all(|(i, &j)| i == j);
            writeln!(
                out,
                "isomorphic{}",
                if identity { " (identity)" } else { "" }
            )?;
            for (i, &j) in f.iter().enumerate() {
                writeln!(
                    out,
                    "{} -> {}",
                    render_coords(&ma.values[i]),
                    render_coords(&mb.values[j])
                )?;
            }
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "not isomorphic")?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_equiv_check(
    n: usize,
    atoms: &[&str],
    depth: usize,
    samples: usize,
    seed: u64,
    limits: &Limits,
    out: &mut dyn Write,
) -> CmdResult {
    let mut sampler = Sampler::new(seed, atoms);
    let mut disagreements = 0;
    let mut holding = 0;
    for s in sampler.sequents(samples, depth, 3) {
        let c = consequence::cross_check(n, &s, limits)?;
        holding += usize::from(c.matrix.holds);
        if !c.agree() {
            disagreements += 1;
            writeln!(
                out,
                "disagreement: {s} (matrix {}, bival {})",
                c.matrix.holds, c.bival.holds
            )?;
        }
    }
    writeln!(
        out,
        "n = {n}, seed = {seed}: {samples} sequents checked, {holding} hold, {disagreements} disagreements"
    )?;
    Ok(if disagreements == 0 {
        EXIT_OK
    } else {
        EXIT_DISAGREE
    })
}
