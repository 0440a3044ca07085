//! Quadratic characters `χ_p = (·|p)` and their L-functions.
//!
//! The completed function is
//! `Λ(s) = (p/π)^{(s+a)/2} Γ((s+a)/2) L(s, χ_p)`, with `a = 0` for
//! `p ≡ 1 (mod 4)` and `a = 1` for `p ≡ 3 (mod 4)`, and satisfies
//! `Λ(s) = Λ(1-s)`. Two evaluators are provided:
//!
//! * [`eval_completed`]: the smoothed approximate functional equation in
//!   incomplete-gamma form, valid anywhere in the strip up to
//!   [`T_MAX`], with the integration ray rotated at large `|Im s|` so that
//!   the exponentially small result is not lost to cancellation.
//! * [`ThetaTable`]: a per-character quadrature table of the theta-integral
//!   representation. Building it costs about as much as a few AFE
//!   evaluations, after which each `Λ(s)` is a dot product; used for bulk
//!   zero finding at moderate heights.

mod afe;
mod theta;

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numth::{is_prime, jacobi};
use crate::special::log_gamma;

pub use theta::{ThetaTable, THETA_MAX_HEIGHT};

/// Largest `|Im s|` accepted by [`eval_completed`].
pub const T_MAX: f64 = 100.0;

/// Hard cap on the number of terms in one AFE evaluation.
pub const TERM_CAP: u64 = 10_000_000;

/// Bound on `|Λ(s) - Λ(1-s)|` relative to `|Λ(s)|` enforced on returned values.
pub const FE_TOLERANCE: f64 = 1e-8;

/// The quadratic character `(·|p)` of an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadChar {
    pub p: u64,
    /// `p mod 4`.
    pub v: u64,
    /// Parity: `χ_p(-1) = (-1)^a`.
    pub a: u8,
}

impl QuadChar {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
        }
        let v = p % 4;
        Ok(QuadChar { p, v, a: if v == 1 { 0 } else { 1 } })
    }

    /// `χ_p(n)`.
    pub fn chi(&self, n: u64) -> i8 {
        jacobi(n % self.p, self.p)
    }

    /// `χ_p(n)` for `n = 0..=n_max`.
    pub fn chi_table(&self, n_max: usize) -> Vec<i8> {
        (0..=n_max as u64).map(|n| self.chi(n)).collect()
    }

    /// `log(p/π)`.
    pub fn log_conductor(&self) -> f64 {
        (self.p as f64 / PI).ln()
    }

    /// `log[(p/π)^{(s+a)/2} Γ((s+a)/2)]`.
    pub fn log_gamma_factor(&self, s: Complex64) -> Result<Complex64> {
        let w = (s + self.a as f64) * 0.5;
        Ok(w * self.log_conductor() + log_gamma(w)?)
    }

    /// `log |(p/π)^{(s+a)/2} Γ((s+a)/2)|` on the critical line.
    pub fn log_gamma_factor_modulus(&self, t: f64) -> Result<f64> {
        Ok(self.log_gamma_factor(Complex64::new(0.5, t))?.re)
    }

    /// Threshold below which a central value is treated as numerically zero:
    /// `1e-8 (p/π)^{1/4}`.
    pub fn tol_zero(&self) -> f64 {
        1e-8 * (self.p as f64 / PI).powf(0.25)
    }
}

/// `Λ(s)` and `L(s)` at one point, with the functional-equation self-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletedValue {
    pub s: Complex64,
    pub lambda: Complex64,
    pub l: Complex64,
    /// `|Λ(s) - Λ(1-s)| / max(|Λ(s)|, 1e-300)`, with `Λ(1-s)` computed on a
    /// different integration ray.
    pub fe_residual: f64,
    /// Terms summed on the primary ray.
    pub terms: u64,
}

fn check_strip(s: Complex64) -> Result<()> {
    if !(s.re >= -1.0 && s.re <= 2.0) || !(s.im.abs() <= T_MAX) {
        return Err(Error::Domain(format!("L-function evaluated at {s}, outside -1 <= Re s <= 2, |Im s| <= {T_MAX}")));
    }
    Ok(())
}

/// `Λ(s, χ_p)` and `L(s, χ_p)` by the approximate functional equation.
///
/// `Λ(1-s)` is evaluated independently on a second ray; the call fails if
/// the two disagree by more than [`FE_TOLERANCE`] relative to `|Λ(s)|`,
/// unless `Λ(s)` is itself zero to within the attainable accuracy.
pub fn eval_completed(chi: &QuadChar, s: Complex64) -> Result<CompletedValue> {
    check_strip(s)?;
    let (phi1, phi2) = afe::rays(s.im);
    let direct = afe::lambda_rotated(chi, s, phi1)?;
    let reflected = afe::lambda_rotated(chi, 1.0 - s, -phi2)?;
    let lambda = direct.value;
    let diff = (lambda - reflected.value).norm();
    let fe_residual = diff / lambda.norm().max(1e-300);
    let noise = 1e3 * f64::EPSILON * direct.max_term.max(reflected.max_term);
    if diff > FE_TOLERANCE * lambda.norm() && diff > noise {
        return Err(Error::Domain(format!(
            "functional-equation self-check failed for p = {} at s = {s}: residual {fe_residual:.3e}",
            chi.p
        )));
    }
    let l = match chi.log_gamma_factor(s) {
        Ok(g) => lambda * (-g).exp(),
        // trivial zeros: the gamma factor has a pole
        Err(Error::Pole { .. }) => Complex64::new(0.0, 0.0),
        Err(e) => return Err(e),
    };
    Ok(CompletedValue { s, lambda, l, fe_residual, terms: direct.terms })
}

/// `L(½, χ_p)`, real by conjugate symmetry.
pub fn central_value(chi: &QuadChar) -> Result<f64> {
    Ok(eval_completed(chi, Complex64::new(0.5, 0.0))?.l.re)
}

/// Hardy's function: `Z(t) = e^{iθ(t)} L(½+it, χ_p)`, real, with
/// `|Z(t)| = |L(½+it)|`, `Z(-t) = Z(t)` and `Z(0) = L(½)`.
pub fn hardy_z(chi: &QuadChar, t: f64) -> Result<f64> {
    let v = eval_completed(chi, Complex64::new(0.5, t))?;
    Ok(v.lambda.re * (-chi.log_gamma_factor_modulus(t)?).exp())
}

/// Common interface of the two `Λ` evaluators, used by the zero finder.
pub trait CompletedEvaluator: Sync {
    fn character(&self) -> &QuadChar;
    fn lambda(&self, s: Complex64) -> Result<Complex64>;
    fn lambda_and_deriv(&self, s: Complex64) -> Result<(Complex64, Complex64)>;

    /// Hardy's `Z(t)` from `Λ(½+it)`.
    fn hardy_z(&self, t: f64) -> Result<f64> {
        let lam = self.lambda(Complex64::new(0.5, t))?;
        Ok(lam.re * (-self.character().log_gamma_factor_modulus(t)?).exp())
    }
}

/// [`CompletedEvaluator`] backed by the approximate functional equation,
/// with `Λ'` by central differences.
#[derive(Debug, Clone, Copy)]
pub struct AfeEvaluator {
    pub chi: QuadChar,
}

impl CompletedEvaluator for AfeEvaluator {
    fn character(&self) -> &QuadChar {
        &self.chi
    }

    fn lambda(&self, s: Complex64) -> Result<Complex64> {
        check_strip(s)?;
        Ok(afe::lambda_rotated(&self.chi, s, afe::rays(s.im).0)?.value)
    }

    fn lambda_and_deriv(&self, s: Complex64) -> Result<(Complex64, Complex64)> {
        let h = 1e-5;
        let f0 = self.lambda(s)?;
        let fp = self.lambda(s + h)?;
        let fm = self.lambda(s - h)?;
        Ok((f0, (fp - fm) / (2.0 * h)))
    }
}

/// The evaluator the zero finder uses up to height `t_max`: the theta table
/// where its accuracy suffices, the AFE beyond.
pub fn evaluator_for(chi: &QuadChar, t_max: f64) -> Result<Box<dyn CompletedEvaluator + Send>> {
    if t_max <= THETA_MAX_HEIGHT {
        Ok(Box::new(ThetaTable::new(chi)?))
    } else {
        Ok(Box::new(AfeEvaluator { chi: *chi }))
    }
}
