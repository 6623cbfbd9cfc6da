//! Command-line front end: classification of single fields, range sweeps,
//! prime-tuple search, oracle verification, and the underlying unit,
//! class-group and Rédei computations.
//!
//! Output is a JSON [`ReportDocument`] by default; sweeps can write CSV.
//! Exit codes: 0 success, 1 usage error, 2 a verification mismatch, 3 the
//! form oracle's range or the square test's precision was exhausted.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use twoclass_core::classify::{SearchStrategy, DEFAULT_SEARCH_BOUND};
use twoclass_core::Error;

pub use report::{ReportDocument, Results, SweepRow, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "twoclass", version, about = "2-class groups of real quadratic fields Q(√d), Q(√2d) and Q(√2, √d)")]
struct Cli {
    /// Write JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Predict ranks and structures for Q(√d), d odd and square-free.
    Classify(ClassifyArgs),
    /// Predict for every odd square-free d in a range.
    Enumerate(EnumerateArgs),
    /// Find primes with prescribed residues mod 8 and Legendre symbols.
    FindPrimes(FindPrimesArgs),
    /// Check predictions against the binary-quadratic-form oracle.
    Verify(VerifyArgs),
    /// Fundamental unit of Q(√d).
    Unit(UnitArgs),
    /// Class group of binary quadratic forms of discriminant D.
    Classgroup(ClassGroupArgs),
    /// Rédei–Reichardt sets S1 and S2 of a fundamental discriminant.
    S1s2(S1S2Args),
}

#[derive(Args, Debug, Serialize)]
struct ClassifyArgs {
    d: u64,
    /// Also check every claim against the form oracle.
    #[arg(long)]
    verify: bool,
}

#[derive(Args, Debug, Serialize)]
struct EnumerateArgs {
    #[arg(long, default_value_t = 3)]
    min: u64,
    #[arg(long)]
    max: u64,
    /// Only fields of this table row, e.g. p1p2q1q2.
    #[arg(long)]
    shape: Option<String>,
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    #[serde(skip)]
    threads: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    min: u64,
    #[arg(long, default_value_t = 20_000)]
    max: u64,
    /// Verify a single field and print its full report.
    #[arg(long, conflicts_with_all = ["min", "max", "csv"])]
    d: Option<u64>,
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    #[serde(skip)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum StrategyArg {
    LeastPrime,
    SingleProgression,
}

impl From<StrategyArg> for SearchStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::LeastPrime => SearchStrategy::LeastPrime,
            StrategyArg::SingleProgression => SearchStrategy::SingleProgression,
        }
    }
}

#[derive(Args, Debug, Serialize)]
struct FindPrimesArgs {
    /// Residues mod 8, one per prime, e.g. 5,5,7,3.
    #[arg(long, value_delimiter = ',', required = true)]
    mod8: Vec<u64>,
    /// Symbol constraints (p_k/p_j) = ±1 as `k,j=±1;...` with j < k.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    symbols: String,
    /// Progression steps tried per prime.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
    bound: u64,
    /// Lower bound for the first prime.
    #[arg(long, default_value_t = 0)]
    start: u64,
    #[arg(long, value_enum, default_value_t = StrategyArg::LeastPrime)]
    strategy: StrategyArg,
}

#[derive(Args, Debug, Serialize)]
struct UnitArgs {
    d: u64,
}

#[derive(Args, Debug, Serialize)]
struct ClassGroupArgs {
    discriminant: i64,
    /// Narrow class group (the default).
    #[arg(long, conflicts_with = "ordinary")]
    narrow: bool,
    /// Ordinary class group; D must be a field discriminant.
    #[arg(long)]
    ordinary: bool,
}

#[derive(Args, Debug, Serialize)]
struct S1S2Args {
    discriminant: i64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Core(Error::OracleRangeExceeded { .. } | Error::PrecisionExhausted { .. }) => EXIT_INCOMPLETE,
            _ => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(s) => f.write_str(s),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

/// Exit code for a completed document: mismatches take precedence over
/// fields the oracle could not check.
pub fn exit_code(doc: &ReportDocument, incomplete: bool) -> i32 {
    if !doc.mismatches.is_empty() {
        EXIT_MISMATCH
    } else if incomplete {
        EXIT_INCOMPLETE
    } else {
        EXIT_OK
    }
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Failure::Usage("--threads must be positive".into())),
        Some(n) => {
            let pool =
                rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn execute(command: &Command) -> Result<(commands::Output, bool), Failure> {
    Ok(match command {
        Command::Classify(a) => (commands::classify(a)?, false),
        Command::Enumerate(a) => (with_threads(a.threads, || commands::enumerate(a))??, a.csv),
        Command::FindPrimes(a) => (commands::find_primes(a)?, false),
        Command::Verify(a) => (with_threads(a.threads, || commands::verify(a))??, a.csv),
        Command::Unit(a) => (commands::unit(a)?, false),
        Command::Classgroup(a) => (commands::classgroup(a)?, false),
        Command::S1s2(a) => (commands::s1s2(a)?, false),
    })
}

fn write_output(out: &mut dyn Write, output: &commands::Output, csv: bool) -> std::io::Result<()> {
    if csv {
        let mut w = csv::Writer::from_writer(out);
        for row in &output.rows {
            w.serialize(row)?;
        }
        w.flush()
    } else {
        serde_json::to_writer_pretty(&mut *out, &output.doc)?;
        writeln!(out)
    }
}

/// Runs the command line `args` (program name first), writing the report to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let csv_requested =
        matches!(&cli.command, Command::Enumerate(a) if a.csv) || matches!(&cli.command, Command::Verify(a) if a.csv);
    if cli.json && csv_requested {
        let _ = writeln!(err, "error: --json and --csv are mutually exclusive");
        return EXIT_USAGE;
    }
    match execute(&cli.command) {
        Ok((output, csv)) => {
            if let Err(e) = write_output(out, &output, csv) {
                let _ = writeln!(err, "error: writing output: {e}");
                return EXIT_USAGE;
            }
            exit_code(&output.doc, output.incomplete)
        }
        Err(f) => {
            let _ = writeln!(err, "error: {f}");
            f.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use report::Mismatch;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("twoclass").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn mismatch_outranks_incomplete() {
        let (_, out, _) = run_str(&["unit", "2"]);
        let mut doc: ReportDocument = serde_json::from_str(&out).unwrap();
        assert_eq!(exit_code(&doc, true), EXIT_INCOMPLETE);
        doc.mismatches.push(Mismatch { d: 2, claim: "c".into(), predicted: "1".into(), observed: "2".into() });
        assert_eq!(exit_code(&doc, true), EXIT_MISMATCH);
        assert_eq!(exit_code(&doc, false), EXIT_MISMATCH);
    }

    #[test]
    fn symbol_parsing() {
        let s = commands::parse_symbols("2,1=-1; 3,1=+1;4,2=1;").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!((s[0].k, s[0].j, s[0].value), (2, 1, -1));
        assert!(commands::parse_symbols("2,1=0").is_err());
        assert!(commands::parse_symbols("2=1").is_err());
    }

    #[test]
    fn json_and_csv_conflict() {
        assert_eq!(run_str(&["--json", "enumerate", "--max", "100", "--csv"]).0, EXIT_USAGE);
    }

    #[test]
    fn zero_threads_is_a_usage_error() {
        assert_eq!(run_str(&["enumerate", "--max", "100", "--threads", "0"]).0, EXIT_USAGE);
    }
}
