use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Variants are grouped by the layer that produces them; the CLI maps a few
/// of them onto dedicated exit codes (see [`crate::cli::ExitCode`]).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid residue class {0}: must be 1 or 3")]
    InvalidResidueClass(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),

    #[error("term budget exceeded: {needed} terms required, cap is {cap}")]
    TruncationBudgetExceeded { needed: u64, cap: u64 },

    #[error("winding number not integral: {value} (rounding residual {residual})")]
    WindingNumberNonIntegral { value: f64, residual: f64 },

    #[error("zero list for p = {p} is not certified")]
    UncertifiedZeros { p: u64 },

    #[error("zero cache missing for {} prime(s): {}", .primes.len(), preview(.primes))]
    MissingCache { primes: Vec<u64> },

    #[error("cache format error: {0}")]
    CacheFormat(String),

    #[error("i/o error: {0}")]
    Io(String),
}

fn preview(primes: &[u64]) -> String {
    let shown: Vec<String> = primes.iter().take(12).map(|p| p.to_string()).collect();
    if primes.len() > 12 {
        format!("{}, ...", shown.join(", "))
    } else {
        shown.join(", ")
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
