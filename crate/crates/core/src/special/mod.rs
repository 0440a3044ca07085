//! Complex special functions with stated accuracy contracts.
//!
//! | function | contract | validated region |
//! |---|---|---|
//! | [`log_gamma`] | rel `1e-12` | `|s| <= 100` |
//! | [`digamma`] | rel `1e-11` | `|s| <= 100` |
//! | [`zeta`] | rel `1e-10` | `|Im s| <= 200`, `Re s >= -1` |
//! | [`zeta_log_deriv`] | rel `1e-9` | `Re s >= 1 - 1/log(|Im s| + 2)` |
//! | [`upper_incomplete_gamma`] | rel `1e-10` | `Re s ∈ [-2, 4]`, `x <= 500` |

mod gamma;
mod incgamma;
mod zeta;

pub use gamma::{digamma, gamma, ln_gamma_real, log_gamma, polygamma, EULER_GAMMA};
pub use incgamma::{upper_incomplete_gamma, upper_incomplete_gamma_complex, IncompleteGamma};
pub use zeta::{zeta, zeta_and_deriv, zeta_em, zeta_log_deriv, zeta_log_deriv_regular, LAURENT_RADIUS, STIELTJES};

/// An accuracy statement attached to a special function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyContract {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub domain: &'static str,
}

pub const LOG_GAMMA_CONTRACT: AccuracyContract =
    AccuracyContract { abs_tol: 0.0, rel_tol: 1e-12, domain: "|s| <= 100, s not a non-positive integer" };
pub const DIGAMMA_CONTRACT: AccuracyContract =
    AccuracyContract { abs_tol: 0.0, rel_tol: 1e-11, domain: "|s| <= 100, s not a non-positive integer" };
pub const ZETA_CONTRACT: AccuracyContract =
    AccuracyContract { abs_tol: 0.0, rel_tol: 1e-10, domain: "|Im s| <= 200, Re s >= -1, s != 1" };
pub const ZETA_LOG_DERIV_CONTRACT: AccuracyContract =
    AccuracyContract { abs_tol: 0.0, rel_tol: 1e-9, domain: "Re s >= 1 - 1/log(|Im s| + 2), s != 1" };
pub const INCOMPLETE_GAMMA_CONTRACT: AccuracyContract =
    AccuracyContract { abs_tol: 0.0, rel_tol: 1e-10, domain: "Re s in [-2, 4], 0 < x <= 500" };
