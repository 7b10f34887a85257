//! Command-line surface: single-value computation, range scans and
//! verification sweeps.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage, 3 domain or guard violation.

mod compute;
mod output;
mod range;
mod scan;
mod verify;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;

pub use range::IntRange;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

pub const THETA_EXACT_GUARD: u64 = 2000;
pub const BOX_EXACT_GUARD: u64 = 3000;

#[derive(Debug, Parser)]
#[command(name = "padic-degrees", version, about = "2-adic valuations of determinantal degrees and box counts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// ν₂ of θ_{q,n}.
    Theta {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// ν₂ of the symmetric degree δ_{k,n} = θ_{n−k,n}.
    Delta {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// ν₂ of the skew degree ε_{2p,n}.
    Epsilon {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// ν₂ of the rectangular degree γ_{k,m,n}.
    Gamma {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// ν₂ of the plane partition count B(a,b,c).
    Box {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        c: u64,
        /// Attach the parity reduction certificate.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        opts: ComputeOpts,
    },
    /// Stream one row per parameter tuple.
    Scan {
        #[command(subcommand)]
        target: ScanTarget,
    },
    /// Run property sweeps.
    Verify {
        /// digit, theta, interval, epsilon, box, skew or all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Overrides the suite's default scan bound.
        #[arg(long)]
        bound: Option<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    /// One JSON object per line.
    #[value(alias = "json-lines", alias = "jsonl")]
    Json,
}

#[derive(Debug, Args)]
pub struct ComputeOpts {
    /// Include the exact value as a decimal string.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Size limit for `--exact`: `n` for θ, δ, ε; `a + b + c` for boxes and γ.
    /// Defaults to 2000 and 3000.
    #[arg(long)]
    pub exact_limit: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ScanOpts {
    /// Include the exact value as a decimal string.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Size limit for `--exact`: `n` for θ, δ, ε; `a + b + c` for boxes and γ.
    /// Defaults to 2000 and 3000.
    #[arg(long)]
    pub exact_limit: Option<u64>,
    /// Worker threads; 0 picks the core count.
    #[arg(long, env = "PADIC_DEGREES_THREADS", default_value_t = 0)]
    pub parallelism: usize,
    /// Append a `# finished_unix_ms=…` trailer line.
    #[arg(long)]
    pub timestamps: bool,
}

/// Ranges are `a`, `a:b` or `a:b:step`, inclusive.
#[derive(Debug, Subcommand)]
pub enum ScanTarget {
    /// Rows `q,i,n,valuation` with `n = q + 2i`.
    Theta {
        #[arg(long)]
        q: IntRange,
        #[arg(long)]
        i: IntRange,
        #[command(flatten)]
        opts: ScanOpts,
    },
    /// Rows `p,n,valuation,odd`; give `--p`, or `--q` for `n − 2p`.
    Epsilon {
        #[arg(long)]
        n: IntRange,
        #[arg(long, conflicts_with = "q", required_unless_present = "q")]
        p: Option<IntRange>,
        #[arg(long)]
        q: Option<IntRange>,
        #[command(flatten)]
        opts: ScanOpts,
    },
    /// Rows `k,m,n,valuation,odd`; tuples outside `1 <= k <= min(m, n)` are skipped.
    Gamma {
        #[arg(long)]
        k: IntRange,
        #[arg(long)]
        m: IntRange,
        #[arg(long)]
        n: IntRange,
        #[command(flatten)]
        opts: ScanOpts,
    },
    /// Rows `a,b,c,valuation,odd`; an omitted `--b` follows `a`, an omitted `--c` follows `b`.
    Box {
        #[arg(long)]
        a: IntRange,
        #[arg(long)]
        b: Option<IntRange>,
        #[arg(long)]
        c: Option<IntRange>,
        #[command(flatten)]
        opts: ScanOpts,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub(crate) enum CliError {
    Domain(Error),
    Io(io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

pub(crate) type CliResult<T> = std::result::Result<T, CliError>;

fn domain_exit_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::InexactDivision(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_DOMAIN,
    }
}

/// Parses `std::env::args` and runs the command.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = dispatch(cli.command, &mut out).and_then(|code| {
        out.flush()?;
        Ok(code)
    });
    match result {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            EXIT_VERIFY_FAILED
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Domain(e)) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            domain_exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CliResult<i32> {
    match command {
        Command::Theta { q, n, opts } => compute::theta(q, n, &opts, out)?,
        Command::Delta { k, n, opts } => compute::delta(k, n, &opts, out)?,
        Command::Epsilon { p, n, opts } => compute::epsilon(p, n, &opts, out)?,
        Command::Gamma { k, m, n, opts } => compute::gamma(k, m, n, &opts, out)?,
        Command::Box { a, b, c, trace, opts } => compute::boxed(a, b, c, trace, &opts, out)?,
        Command::Scan { target } => scan::run(target, out)?,
        Command::Verify { suite, bound } => {
            let passed = verify::run(&suite, bound, out)?;
            return Ok(if passed { EXIT_OK } else { EXIT_VERIFY_FAILED });
        }
    }
    Ok(EXIT_OK)
}
