//! Smoothed approximate functional equation on a rotated ray.
//!
//! For `|φ| < π/2`, with `w = (s+a)/2`, `w' = (1-s+a)/2` and `y_n = π n²/p`,
//!
//! `Λ(s) = Σ_n χ(n) n^a [ y_n^{-w} Γ(w, y_n e^{iφ}) + y_n^{-w'} Γ(w', y_n e^{-iφ}) ]`.
//!
//! At `φ = 0` the two sums are of size `|Γ(w)|` while `Λ(½+it)` is smaller
//! by a factor `e^{-π|t|/4}`; tilting the ray towards `sign(t)·π/2` trades
//! that cancellation for slower decay in `n`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::{QuadChar, TERM_CAP};
use crate::error::{Error, Result};
use crate::special::IncompleteGamma;

/// Cancellation budget: the rotated terms exceed the result by about
/// `e^{ROTATION_BUDGET/2}`.
const ROTATION_BUDGET: f64 = 10.0;
/// Angular offset of the second ray used for the functional-equation check.
const SECOND_RAY_OFFSET: f64 = 0.1;

pub(super) struct AfeSum {
    pub value: Complex64,
    pub max_term: f64,
    pub terms: u64,
}

/// Primary ray for height `t` and a distinct second ray.
pub(super) fn rays(t: f64) -> (f64, f64) {
    let sign = if t < 0.0 { -1.0 } else { 1.0 };
    let phi1 = sign * (FRAC_PI_2 - ROTATION_BUDGET / t.abs().max(1e-300)).max(0.0);
    let phi2 = if phi1.abs() >= SECOND_RAY_OFFSET { phi1 - sign * SECOND_RAY_OFFSET } else { phi1 + sign * SECOND_RAY_OFFSET };
    (phi1, phi2)
}

pub(super) fn lambda_rotated(chi: &QuadChar, s: Complex64, phi: f64) -> Result<AfeSum> {
    let a = chi.a as f64;
    let w = (s + a) * 0.5;
    let w2 = (1.0 - s + a) * 0.5;
    let ig1 = IncompleteGamma::new(w)?;
    let ig2 = IncompleteGamma::new(w2)?;
    let rot = Complex64::from_polar(1.0, phi);
    let rot2 = rot.conj();
    let cphi = phi.cos();
    let reach = w.norm() + w2.norm() + 10.0;
    let p = chi.p as f64;
    let needed = ((reach + 40.0) * p / (PI * cphi)).sqrt().ceil();
    if needed > TERM_CAP as f64 {
        return Err(Error::TruncationBudgetExceeded { needed: needed.min(u64::MAX as f64) as u64, cap: TERM_CAP });
    }
    let mut value = Complex64::new(0.0, 0.0);
    let mut max_term: f64 = 0.0;
    let mut n: u64 = 0;
    loop {
        n += 1;
        if n > TERM_CAP {
            return Err(Error::TruncationBudgetExceeded { needed: n, cap: TERM_CAP });
        }
        let y = PI * (n as f64) * (n as f64) / p;
        let ly = y.ln();
        let bracket = (-w * ly).exp() * ig1.eval(rot * y)? + (-w2 * ly).exp() * ig2.eval(rot2 * y)?;
        let weight = if chi.a == 1 { n as f64 } else { 1.0 };
        let mag = bracket.norm() * weight;
        max_term = max_term.max(mag);
        let x = chi.chi(n);
        if x != 0 {
            value += bracket * (weight * x as f64);
        }
        if y * cphi > reach && mag < 1e-17 * max_term {
            break;
        }
    }
    Ok(AfeSum { value, max_term, terms: n })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rays_differ_and_stay_inside() {
        for t in [0.0, 1.0, -3.0, 6.0, 7.0, -20.0, 55.0, 100.0] {
            let (a, b) = rays(t);
            assert!(a.abs() < FRAC_PI_2 && b.abs() < FRAC_PI_2);
            assert!((a - b).abs() > 0.09);
            if t != 0.0 {
                assert!(a * t >= 0.0);
            }
        }
    }

    #[test]
    fn ray_independence() {
        let chi = QuadChar::new(103).unwrap();
        let s = Complex64::new(0.5, 20.0);
        let base = lambda_rotated(&chi, s, 1.0).unwrap().value;
        for phi in [0.6, 0.9, 1.1] {
            let v = lambda_rotated(&chi, s, phi).unwrap().value;
            assert!((v - base).norm() < 1e-9 * base.norm(), "φ={phi}: {v} vs {base}");
        }
    }

    #[test]
    fn term_count_grows_like_sqrt_conductor() {
        let s = Complex64::new(0.5, 3.0);
        let small = lambda_rotated(&QuadChar::new(101).unwrap(), s, rays(3.0).0).unwrap().terms;
        let large = lambda_rotated(&QuadChar::new(1_000_003).unwrap(), s, rays(3.0).0).unwrap().terms;
        let ratio = large as f64 / small as f64;
        assert!(ratio > 30.0 && ratio < 300.0, "{small} -> {large}");
    }
}
