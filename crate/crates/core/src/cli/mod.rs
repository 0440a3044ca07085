//! Command-line front door.
//!
//! `lowlying <subcommand> [flags]` with subcommands `sieve`, `zeros`,
//! `formfactor`, `density`, `ratios`, `nonvanish` and `report`. Settings
//! come from built-in defaults, then an optional `--config` file, then the
//! flags themselves.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::{Outcome, Progress, SCHEMA_VERSION};
pub use config::{Overrides, RunConfig};

use crate::error::{Error, Result};

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    /// I/O and numerical failures not covered below.
    Failure = 1,
    Usage = 2,
    MissingCache = 3,
    PartialFailure = 4,
}

impl ExitCode {
    pub fn for_error(e: &Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::InvalidResidueClass(_) => ExitCode::Usage,
            Error::MissingCache { .. } => ExitCode::MissingCache,
            _ => ExitCode::Failure,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lowlying", version, about = "Low-lying zeros of quadratic Dirichlet L-functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write primes.csv for the family.
    Sieve(Flags),
    /// Isolate and cache zeros for the family.
    Zeros(Flags),
    /// Form factor against its main terms (formfactor.csv, formfactor.svg).
    Formfactor(Flags),
    /// One-level densities and the explicit formula (density.csv, explicit.csv).
    Density(Flags),
    /// Ratios-conjecture comparisons (ratios.csv, ratios.svg).
    Ratios(Flags),
    /// Central values and Fejér bounds (nonvanish.csv, nonvanish_summary.json).
    Nonvanish(Flags),
    /// All statistics in a single report.json.
    Report(Flags),
}

#[derive(Debug, Args)]
struct Flags {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Family bound: primes p <= X.
    #[arg(long = "X")]
    big_x: Option<u64>,
    /// Residue class of p modulo 4 (1 or 3).
    #[arg(long)]
    v: Option<u64>,
    /// Kernel name (gauss, gauss2).
    #[arg(long)]
    kernel: Option<String>,
    /// Comma-separated test functions, e.g. fejer:0.9,gaussian:1,bump:0.5.
    #[arg(long)]
    tf: Option<String>,
    /// Fejér parameter added to the bound grid.
    #[arg(long)]
    lambda: Option<f64>,
    /// Zero height.
    #[arg(long = "T")]
    t: Option<f64>,
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    threads: Option<usize>,
    /// `start:stop:step` or a comma-separated list.
    #[arg(long)]
    alpha_grid: Option<String>,
    /// Comma-separated subset of primes (zeros only).
    #[arg(long)]
    primes: Option<String>,
    /// Suppress progress messages.
    #[arg(long, short)]
    quiet: bool,
}

impl Flags {
    fn overrides(&self) -> Overrides {
        Overrides {
            big_x: self.big_x,
            v: self.v,
            kernel: self.kernel.clone(),
            tf: self.tf.clone(),
            lambda: self.lambda,
            t: self.t,
            cache_dir: self.cache_dir.clone(),
            out_dir: self.out_dir.clone(),
            threads: self.threads,
            alpha_grid: self.alpha_grid.clone(),
            primes: self.primes.clone(),
        }
    }
}

type CommandFn = fn(&RunConfig, Progress) -> Result<Outcome>;

fn dispatch(command: &Command) -> (&Flags, CommandFn) {
    match command {
        Command::Sieve(f) => (f, commands::cmd_sieve),
        Command::Zeros(f) => (f, commands::cmd_zeros),
        Command::Formfactor(f) => (f, commands::cmd_formfactor),
        Command::Density(f) => (f, commands::cmd_density),
        Command::Ratios(f) => (f, commands::cmd_ratios),
        Command::Nonvanish(f) => (f, commands::cmd_nonvanish),
        Command::Report(f) => (f, commands::cmd_report),
    }
}

/// Runs a command on a pool of `cfg.threads` workers.
pub fn run(cfg: &RunConfig, f: CommandFn, progress: Progress) -> Result<Outcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| f(cfg, progress))
}

/// Parses `args` (program name first), runs the command and reports errors
/// on stderr.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::Usage } else { ExitCode::Success };
        }
    };
    let (flags, f) = dispatch(&cli.command);
    let progress = Progress { quiet: flags.quiet };
    let cfg = match RunConfig::resolve(flags.config.as_deref(), &flags.overrides()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("lowlying: {e}");
            return ExitCode::for_error(&e);
        }
    };
    match run(&cfg, f, progress) {
        Ok(outcome) => {
            for path in &outcome.files {
                progress.say(format!("wrote {}", path.display()));
            }
            if outcome.failures.is_empty() {
                ExitCode::Success
            } else {
                for (p, e) in &outcome.failures {
                    eprintln!("lowlying: p = {p}: {e}");
                }
                ExitCode::PartialFailure
            }
        }
        Err(e) => {
            eprintln!("lowlying: {e}");
            if let Error::MissingCache { primes } = &e {
                let all: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
                eprintln!("lowlying: missing primes: {}", all.join(","));
                eprintln!("lowlying: run `lowlying zeros` with the same X, v and T first");
            }
            ExitCode::for_error(&e)
        }
    }
}
