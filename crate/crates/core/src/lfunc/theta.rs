//! Theta-integral representation of `Λ` tabulated on a fixed quadrature.
//!
//! With `θ(x) = Σ_n χ(n) n^a e^{-π n² x / p}` and the theta transformation
//! `θ(1/x) = x^{a+½} θ(x)`,
//!
//! `Λ(s) = ∫_0^∞ θ(e^u) [e^{(s+a)u/2} + e^{(1-s+a)u/2}] du`.
//!
//! `θ(e^u)` decays doubly exponentially, so the integral is truncated at
//! `e^U = K p/π` and discretised once by composite Gauss–Legendre. On the
//! critical line the integral is `Σ_j h_j cos(t u_j / 2)`.
//!
//! The representation does not rotate the contour, so the relative accuracy
//! of `Λ(½+it)` degrades like `e^{π|t|/4}` times the rounding level; it is
//! used only up to [`THETA_MAX_HEIGHT`].

use num_complex::Complex64;

use super::{CompletedEvaluator, QuadChar};
use crate::error::Result;
use crate::quad::composite_rule;

/// Highest `|Im s|` at which the table is trusted (relative accuracy of
/// `Λ(½+it)` there is about `1e-16 e^{π t/4} ≈ 1e-8`).
pub const THETA_MAX_HEIGHT: f64 = 24.0;

/// `θ(e^U) ≈ e^{-TRUNCATION_EXPONENT}`.
const TRUNCATION_EXPONENT: f64 = 45.0;
const PANEL_WIDTH: f64 = 0.25;
const PANEL_ORDER: usize = 16;

#[derive(Debug, Clone)]
pub struct ThetaTable {
    chi: QuadChar,
    /// Quadrature nodes `u_j`.
    nodes: Vec<f64>,
    /// `weight_j · θ(e^{u_j})`.
    g: Vec<f64>,
    /// `2 g_j e^{(½+a) u_j / 2}`, the critical-line coefficients.
    h: Vec<f64>,
}

impl ThetaTable {
    pub fn new(chi: &QuadChar) -> Result<Self> {
        let p = chi.p as f64;
        let a = chi.a as f64;
        let upper = (TRUNCATION_EXPONENT * p / std::f64::consts::PI).ln().max(1.0);
        let panels = (upper / PANEL_WIDTH).ceil() as usize;
        let (nodes, weights) = composite_rule(0.0, panels as f64 * PANEL_WIDTH, panels, PANEL_ORDER);
        let n_max = ((TRUNCATION_EXPONENT + 5.0) * p / std::f64::consts::PI).sqrt().ceil() as usize + 2;
        let chis = chi.chi_table(n_max);
        let mut g = Vec::with_capacity(nodes.len());
        let mut h = Vec::with_capacity(nodes.len());
        for (&u, &wt) in nodes.iter().zip(&weights) {
            let x = std::f64::consts::PI * u.exp() / p;
            // e^{-x n²} by the recurrence e^{-x(n+1)²} = e^{-x n²} e^{-x(2n+1)}
            let q2 = (-2.0 * x).exp();
            let mut step = (-x).exp(); // e^{-x(2n-1)} at n = 1
            let mut term = step; // e^{-x n²}
            let mut theta = 0.0;
            let mut n = 1usize;
            loop {
                let c = chis[n];
                if c != 0 {
                    let weight = if chi.a == 1 { n as f64 } else { 1.0 };
                    theta += c as f64 * weight * term;
                }
                if x * (n * n) as f64 > TRUNCATION_EXPONENT + 5.0 || n >= n_max {
                    break;
                }
                step *= q2;
                term *= step;
                n += 1;
            }
            g.push(wt * theta);
            h.push(2.0 * wt * theta * ((0.5 + a) * u * 0.5).exp());
        }
        Ok(ThetaTable { chi: *chi, nodes, g, h })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Λ(s)`.
    pub fn lambda_at(&self, s: Complex64) -> Complex64 {
        self.lambda_and_deriv_at(s).0
    }

    /// `(Λ(s), Λ'(s))`.
    pub fn lambda_and_deriv_at(&self, s: Complex64) -> (Complex64, Complex64) {
        let a = self.chi.a as f64;
        let w1 = (s + a) * 0.5;
        let w2 = (1.0 - s + a) * 0.5;
        let mut val = Complex64::new(0.0, 0.0);
        let mut der = Complex64::new(0.0, 0.0);
        for (&u, &g) in self.nodes.iter().zip(&self.g) {
            let e1 = (w1 * u).exp();
            let e2 = (w2 * u).exp();
            val += (e1 + e2) * g;
            der += (e1 - e2) * (0.5 * u * g);
        }
        (val, der)
    }

    /// `Λ(½+it)`, real.
    pub fn lambda_on_line(&self, t: f64) -> f64 {
        let half_t = 0.5 * t;
        self.nodes.iter().zip(&self.h).map(|(&u, &h)| h * (half_t * u).cos()).sum()
    }
}

impl CompletedEvaluator for ThetaTable {
    fn character(&self) -> &QuadChar {
        &self.chi
    }

    fn lambda(&self, s: Complex64) -> Result<Complex64> {
        if s.re == 0.5 {
            return Ok(Complex64::new(self.lambda_on_line(s.im), 0.0));
        }
        Ok(self.lambda_at(s))
    }

    fn lambda_and_deriv(&self, s: Complex64) -> Result<(Complex64, Complex64)> {
        Ok(self.lambda_and_deriv_at(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfunc::eval_completed;

    #[test]
    fn agrees_with_afe() {
        for p in [3u64, 5, 101, 103, 9973, 199_999] {
            let chi = QuadChar::new(p).unwrap();
            let table = ThetaTable::new(&chi).unwrap();
            for s in [
                Complex64::new(0.5, 0.0),
                Complex64::new(0.5, 3.7),
                Complex64::new(1.5, 8.0),
                Complex64::new(-0.5, 2.0),
                Complex64::new(0.5, 20.0),
            ] {
                let want = eval_completed(&chi, s).unwrap().lambda;
                let got = table.lambda_at(s);
                let tol = 1e-16 * (std::f64::consts::PI * s.im.abs() / 4.0).exp() * 1e3 + 1e-12;
                assert!((got - want).norm() < tol * want.norm().max(1e-300), "p={p} s={s}: {got} vs {want}");
                if s.re == 0.5 {
                    assert!((table.lambda_on_line(s.im) - want.re).abs() < tol * want.norm());
                }
            }
        }
    }

    #[test]
    fn derivative_matches_difference() {
        let chi = QuadChar::new(1009).unwrap();
        let table = ThetaTable::new(&chi).unwrap();
        let s = Complex64::new(1.2, 5.0);
        let h = 1e-5;
        let fd = (table.lambda_at(s + h) - table.lambda_at(s - h)) / (2.0 * h);
        let (_, d) = table.lambda_and_deriv_at(s);
        assert!((fd - d).norm() < 1e-8 * d.norm());
    }
}
