//! Numerical laboratory for the low-lying zeros of quadratic Dirichlet
//! L-functions `L(s, χ_p)` attached to primes `p ≡ v (mod 4)`.

pub mod cli;
pub mod density;
pub mod error;
pub mod kernel;
pub mod lfunc;
pub mod nonvanish;
pub mod numth;
pub mod quad;
pub mod ratios;
pub mod special;
pub mod zeros;

pub use error::{Error, Result};
