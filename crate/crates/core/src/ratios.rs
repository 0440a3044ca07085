//! Predictions derived from the ratios conjecture for this family: the
//! ratio average, the log-derivative average, and the one-level density
//! with its lower-order terms.
//!
//! The gamma-factor ratio is `Γ(b - z/2) / Γ(b + z/2)` with `b = ¼` for
//! even characters (`p ≡ 1 mod 4`) and `b = ¾` for odd ones, matching the
//! completed L-function of each class.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::density::{TestFunction, DENSITY_NORM};
use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::lfunc::{eval_completed, QuadChar};
use crate::numth::{for_each_prime, li, sieve_primes};
use crate::quad::{integrate, QuadOptions};
use crate::special::{log_gamma, polygamma, zeta, zeta_log_deriv, zeta_log_deriv_regular, STIELTJES};

/// Below this `|t|` the density integrand uses the fused expansion.
pub const SWITCH_RADIUS: f64 = 1e-3;
/// The `ε` in `|Im α|, |Im β| <= X^{1-ε}`.
pub const RATIOS_EPSILON: f64 = 0.01;
/// Largest `t` the density integral is taken to.
pub const MAX_CUTOFF: f64 = 4096.0;

/// Shifts of the ratio average.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatiosParams {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub big_x: u64,
    pub v: u64,
}

impl RatiosParams {
    /// Checks the ranges under which the conjectured formula is stated.
    pub fn validate(&self) -> Result<()> {
        let x = self.big_x as f64;
        if self.big_x < 3 {
            return Err(Error::Domain(format!("X = {} too small", self.big_x)));
        }
        if !(self.alpha.re > -0.25 && self.alpha.re < 0.25) {
            return Err(Error::Domain(format!("Re α = {} outside (-¼, ¼)", self.alpha.re)));
        }
        if !(self.beta.re >= 1.0 / x.ln() && self.beta.re < 0.25) {
            return Err(Error::Domain(format!("Re β = {} outside [1/log X, ¼)", self.beta.re)));
        }
        let im_cap = x.powf(1.0 - RATIOS_EPSILON);
        if self.alpha.im.abs() > im_cap || self.beta.im.abs() > im_cap {
            return Err(Error::Domain(format!("imaginary shifts exceed X^(1-ε) = {im_cap:.1}")));
        }
        Ok(())
    }
}

/// Precomputed family data: `log(p/π)` for every prime.
#[derive(Debug, Clone)]
pub struct RatiosFamily {
    pub big_x: u64,
    pub v: u64,
    /// `¼` or `¾`.
    pub b: f64,
    pub log_p_over_pi: Vec<f64>,
    /// `Σ_p log(p/π)`.
    pub m1: f64,
}

impl RatiosFamily {
    pub fn new(big_x: u64, v: u64) -> Result<Self> {
        let set = sieve_primes(big_x, v)?;
        let log_p_over_pi: Vec<f64> = set.primes.iter().map(|&p| (p as f64 / PI).ln()).collect();
        let m1 = log_p_over_pi.iter().sum();
        Ok(RatiosFamily { big_x, v, b: if v == 1 { 0.25 } else { 0.75 }, log_p_over_pi, m1 })
    }

    /// `X*`.
    pub fn x_star(&self) -> f64 {
        self.log_p_over_pi.len() as f64
    }

    /// `Σ_p (p/π)^{-z}`.
    pub fn conductor_sum(&self, z: Complex64) -> Complex64 {
        self.log_p_over_pi.iter().map(|&l| (-z * l).exp()).sum()
    }
}

/// `Γ(b - z/2) / Γ(b + z/2)`.
pub fn gamma_ratio(b: f64, z: Complex64) -> Result<Complex64> {
    Ok((log_gamma(b - z / 2.0)? - log_gamma(b + z / 2.0)?).exp())
}

/// The conjectured main terms of `Σ_p L(½+α, χ_p) / L(½+β, χ_p)`.
pub fn ratios_main_terms(params: &RatiosParams) -> Result<Complex64> {
    params.validate()?;
    ratios_main_terms_unchecked(params)
}

/// [`ratios_main_terms`] without the range checks, for exploratory shifts.
pub fn ratios_main_terms_unchecked(params: &RatiosParams) -> Result<Complex64> {
    if (params.alpha - params.beta).norm() < 1e-12 {
        return Err(Error::Pole { function: "ζ(1 - α + β)", at: "α = β".into() });
    }
    let fam = RatiosFamily::new(params.big_x, params.v)?;
    let (a, bt) = (params.alpha, params.beta);
    let first = zeta(1.0 + 2.0 * a)? / zeta(1.0 + a + bt)?;
    let second = gamma_ratio(fam.b, a)? * zeta(1.0 - 2.0 * a)? / zeta(1.0 - a + bt)?;
    Ok(fam.x_star() * first + second * fam.conductor_sum(a))
}

/// `Σ_p L(½+α)/L(½+β)` computed from the L-functions themselves.
pub fn ratios_empirical(params: &RatiosParams) -> Result<Complex64> {
    let set = sieve_primes(params.big_x, params.v)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for &p in &set.primes {
        let chi = QuadChar::new(p)?;
        let num = eval_completed(&chi, 0.5 + params.alpha)?.l;
        let den = eval_completed(&chi, 0.5 + params.beta)?.l;
        sum += num / den;
    }
    Ok(sum)
}

/// `|∏_{q <= P} (local factor) / (ζ(1+2α)/ζ(1+α+β)) - 1|` with local factor
/// `1 + q^{-(1+2α)}/(1 - q^{-(1+2α)}) - q^{-(1+α+β)}/(1 - q^{-(1+2α)})`.
pub fn euler_product_check(alpha: Complex64, beta: Complex64, big_p: u64) -> Result<f64> {
    if !(alpha.re > 0.01 && (alpha + beta).re > 0.02) {
        return Err(Error::Domain(format!("Euler product needs Re α > 0.01 and Re(α+β) > 0.02, got α = {alpha}, β = {beta}")));
    }
    let mut log_prod = Complex64::new(0.0, 0.0);
    for_each_prime(big_p, |q| {
        let lq = (q as f64).ln();
        let u = (-(1.0 + 2.0 * alpha) * lq).exp();
        let w = (-(1.0 + alpha + beta) * lq).exp();
        let local = 1.0 + u / (1.0 - u) - w / (1.0 - u);
        log_prod += local.ln();
    });
    let target = zeta(1.0 + 2.0 * alpha)? / zeta(1.0 + alpha + beta)?;
    Ok((log_prod.exp() / target - 1.0).norm())
}

/// Conjectured `Σ_p L'/L(½ + r, χ_p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDerivPrediction {
    pub value: Complex64,
    /// `1/log X <= Re r < ¼`; outside it the value is exploratory.
    pub in_range: bool,
}

pub fn log_deriv_prediction(r: Complex64, big_x: u64, v: u64) -> Result<LogDerivPrediction> {
    let fam = RatiosFamily::new(big_x, v)?;
    let in_range = r.re >= 1.0 / (big_x as f64).ln() && r.re < 0.25;
    let value = fam.x_star() * zeta_log_deriv(1.0 + 2.0 * r)?
        - gamma_ratio(fam.b, r)? * zeta(1.0 - 2.0 * r)? * fam.conductor_sum(r);
    Ok(LogDerivPrediction { value, in_range })
}

/// `Σ_p L'/L(½ + r, χ_p)` by central differences of `L` along the real
/// axis with step `h`.
pub fn log_deriv_empirical(r: f64, big_x: u64, v: u64, h: f64) -> Result<f64> {
    let set = sieve_primes(big_x, v)?;
    let mut sum = 0.0;
    for &p in &set.primes {
        let chi = QuadChar::new(p)?;
        let s = Complex64::new(0.5 + r, 0.0);
        let l0 = eval_completed(&chi, s)?.l.re;
        let lp = eval_completed(&chi, s + h)?.l.re;
        let lm = eval_completed(&chi, s - h)?.l.re;
        sum += (lp - lm) / (2.0 * h * l0);
    }
    Ok(sum)
}

/// Which evaluation of the density integrand to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Fused for `|t| < SWITCH_RADIUS`, naive otherwise.
    Auto,
    Fused,
    Naive,
}

/// `expm1(z) / z`.
fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..30 {
            term *= z / k as f64;
            sum += term;
            if term.norm() < 1e-17 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

/// `Σ_p` of the bracket in the density integrand at real `t`:
/// `log(p/π) + Re ψ(b + it/2) + 2 Re[ζ'/ζ(1+2it) - (p/π)^{-it} Γ(b-it/2)/Γ(b+it/2) ζ(1-2it)]`.
pub fn density_integrand(fam: &RatiosFamily, t: f64, branch: Branch) -> Result<f64> {
    let it = Complex64::new(0.0, t);
    let xs = fam.x_star();
    let psi = polygamma(0, fam.b + it / 2.0)?.re;
    let fused = match branch {
        Branch::Fused => true,
        Branch::Naive => false,
        Branch::Auto => t.abs() < SWITCH_RADIUS,
    };
    let h = if fused {
        // w = 2it; the poles -1/w of both terms cancel between primes
        let w = 2.0 * it;
        let b = Complex64::new(fam.b, 0.0);
        let q = w / 4.0;
        // (lnΓ(b - w/4) - lnΓ(b + w/4)) / w, odd in w
        let d_over_w = -0.5
            * (polygamma(0, b)? + polygamma(2, b)? * q * q / 6.0 + polygamma(4, b)? * q.powi(4) / 120.0
                + polygamma(6, b)? * q.powi(6) / 5040.0);
        let mut e_reg = Complex64::new(0.0, 0.0);
        let mut wn = Complex64::new(1.0, 0.0);
        let mut fact = 1.0;
        for (n, g) in STIELTJES.iter().enumerate() {
            if n > 0 {
                wn *= w;
                fact *= n as f64;
            }
            e_reg += g * wn / fact;
        }
        let mut pole_part = Complex64::new(0.0, 0.0);
        let mut q_sum = Complex64::new(0.0, 0.0);
        for &l in &fam.log_p_over_pi {
            let c = -0.5 * l + d_over_w;
            let e = exprel(w * c);
            // (Q - 1)/w = c · exprel(w c), Q = 1 + w c · exprel(w c)
            pole_part += c * e;
            q_sum += 1.0 + w * c * e;
        }
        pole_part + xs * zeta_log_deriv_regular(w)? - e_reg * q_sum
    } else {
        let g = gamma_ratio(fam.b, it)?;
        xs * zeta_log_deriv(1.0 + 2.0 * it)? - g * zeta(1.0 - 2.0 * it)? * fam.conductor_sum(it)
    };
    Ok(fam.m1 + xs * psi + 2.0 * h.re)
}

/// Cutoff for `∫_0^∞ f(t) · bracket dt`: the first `t = 2^k` beyond which
/// `|f(t)| (1+t) log(e+t)` stays below `1e-13 · max |f|` for three doublings.
fn cutoff<F: Fn(f64) -> f64>(f: &F) -> Result<f64> {
    let scale = [0.0, 0.25, 0.5, 1.0].iter().map(|&t| f(t).abs()).fold(0.0, f64::max).max(1e-300);
    let mut t = 1.0;
    let mut quiet = 0;
    while t <= MAX_CUTOFF {
        let probe = [t, 1.25 * t, 1.5 * t, 1.75 * t].iter().map(|&s| f(s).abs() * (1.0 + s) * (std::f64::consts::E + s).ln()).fold(0.0, f64::max);
        if probe < 1e-13 * scale {
            quiet += 1;
            if quiet == 3 {
                return Ok(t / 4.0);
            }
        } else {
            quiet = 0;
        }
        t *= 2.0;
    }
    Err(Error::QuadratureNonConvergence(format!("test function does not decay enough by t = {MAX_CUTOFF}")))
}

/// The predicted `Σ_p Σ_ρ f(γ)` for an even `f` (unnormalized).
pub fn density_prediction<F: Fn(f64) -> f64>(f: F, big_x: u64, v: u64) -> Result<f64> {
    let fam = RatiosFamily::new(big_x, v)?;
    density_prediction_for(&f, &fam)
}

pub fn density_prediction_for<F: Fn(f64) -> f64>(f: &F, fam: &RatiosFamily) -> Result<f64> {
    let t_cut = cutoff(f)?;
    let mut failure = None;
    let integrand = |t: f64| -> f64 {
        let ft = f(t);
        if ft == 0.0 {
            return 0.0;
        }
        match density_integrand(fam, t, Branch::Auto) {
            Ok(v) => ft * v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let scale = fam.x_star() * (fam.big_x as f64).ln() * f(0.0).abs().max(1e-300);
    let r = integrate(integrand, 0.0, t_cut, QuadOptions { abs_tol: 1e-11 * scale, rel_tol: 1e-11, max_intervals: 20_000 });
    if let Some(e) = failure {
        return Err(e);
    }
    // even integrand: (1/2π) ∫_{-∞}^{∞} = (1/π) ∫_0^∞
    Ok(r?.value / PI)
}

/// The ratios prediction for `Σ_p Σ_ρ K(ρ) r(γ log X / 2π)`, divided by
/// `½ K(½) Li(X)`: the quantity the empirical density is compared with.
pub fn kernel_weighted_density_prediction(tf: &TestFunction, kernel: &KernelSpec, big_x: u64, v: u64) -> Result<f64> {
    let scale = (big_x as f64).ln() / (2.0 * PI);
    let raw = density_prediction(|t| kernel.weight(t) * tf.r(t * scale), big_x, v)?;
    Ok(raw / (DENSITY_NORM * kernel.k_half() * li(big_x as f64)?))
}

/// Scaled density prediction against its large-`X` limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledDensity {
    /// `(X*)^{-1}` times the prediction for `f(t) = g(t log X / 2π)`.
    pub value: f64,
    /// `∫ g(τ)(1 - sin 2πτ / 2πτ) dτ`.
    pub limit: f64,
}

pub fn scaled_density_prediction(g: &TestFunction, big_x: u64, v: u64) -> Result<ScaledDensity> {
    let fam = RatiosFamily::new(big_x, v)?;
    let scale = (big_x as f64).ln() / (2.0 * PI);
    let raw = density_prediction_for(&|t: f64| g.r(t * scale), &fam)?;
    Ok(ScaledDensity { value: raw / fam.x_star(), limit: crate::density::limit_density(g)?.direct })
}

/// `(1 + e^{-2πiτ}/(4πiτ) - e^{2πiτ}/(4πiτ),  1 - sin(2πτ)/(2πτ))` for `τ ≠ 0`.
pub fn corollary_integrand(tau: f64) -> (Complex64, f64) {
    let i4pt = Complex64::new(0.0, 4.0 * PI * tau);
    let lhs = 1.0 + Complex64::from_polar(1.0, -2.0 * PI * tau) / i4pt - Complex64::from_polar(1.0, 2.0 * PI * tau) / i4pt;
    let z = 2.0 * PI * tau;
    (lhs, 1.0 - z.sin() / z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_main_terms_are_conjugate_symmetric() {
        let p = RatiosParams { alpha: Complex64::new(0.1, 0.3), beta: Complex64::new(0.2, -0.1), big_x: 1000, v: 1 };
        let q = RatiosParams { alpha: p.alpha.conj(), beta: p.beta.conj(), ..p };
        let (a, b) = (ratios_main_terms(&p).unwrap(), ratios_main_terms(&q).unwrap());
        assert!((a - b.conj()).norm() < 1e-9 * a.norm());
        let real = RatiosParams { alpha: Complex64::new(0.1, 0.0), beta: Complex64::new(0.2, 0.0), big_x: 1000, v: 1 };
        assert!(ratios_main_terms(&real).unwrap().im.abs() < 1e-12);
        let same = RatiosParams { beta: real.alpha + Complex64::new(0.1, 0.0), alpha: real.alpha + Complex64::new(0.1, 0.0), ..real };
        assert!(matches!(ratios_main_terms(&same), Err(Error::Pole { .. })));
        let wide = RatiosParams { alpha: Complex64::new(0.3, 0.0), ..real };
        assert!(ratios_main_terms(&wide).is_err());
    }

    #[test]
    fn euler_product_converges() {
        let a = Complex64::new(0.1, 0.0);
        assert!(euler_product_check(a, a, 1_000_000).unwrap() < 1e-3);
        let b = Complex64::new(0.2, 0.0);
        let d4 = euler_product_check(a, b, 10_000).unwrap();
        let d6 = euler_product_check(a, b, 1_000_000).unwrap();
        assert!(d6 < d4, "{d4} {d6}");
        assert!(euler_product_check(Complex64::new(0.0, 0.0), b, 100).is_err());
    }

    #[test]
    fn log_deriv_prediction_matches_term_by_term_sum() {
        // direct re-summation with the gamma ratio built from Γ itself
        let r = 0.1;
        let pred = log_deriv_prediction(Complex64::new(r, 0.0), 1000, 1).unwrap();
        assert!(!pred.in_range && pred.value.im.abs() < 1e-12);
        assert!(log_deriv_prediction(Complex64::new(0.15, 0.0), 1000, 1).unwrap().in_range);
        let set = sieve_primes(1000, 1).unwrap();
        let rc = Complex64::new(r, 0.0);
        let g = crate::special::gamma(0.25 - rc / 2.0).unwrap() / crate::special::gamma(0.25 + rc / 2.0).unwrap();
        let zl = zeta_log_deriv(1.0 + 2.0 * rc).unwrap();
        let z = zeta(1.0 - 2.0 * rc).unwrap();
        let direct: Complex64 = set.primes.iter().map(|&p| zl - (p as f64 / PI).powf(-r) * g * z).sum();
        assert!((pred.value - direct).norm() < 1e-10 * direct.norm());
    }

    #[test]
    fn fused_branch_is_regular_and_matches_naive() {
        for v in [1u64, 3] {
            let fam = RatiosFamily::new(1000, v).unwrap();
            let at0 = density_integrand(&fam, 0.0, Branch::Auto).unwrap();
            assert!(at0.is_finite());
            for t in [1e-2, -1e-2, 5e-3] {
                let f = density_integrand(&fam, t, Branch::Fused).unwrap();
                let n = density_integrand(&fam, t, Branch::Naive).unwrap();
                assert!((f - n).abs() < 1e-6, "v={v} t={t}: {f} vs {n}");
            }
            for t in [0.3, 2.0, 7.5] {
                let a = density_integrand(&fam, t, Branch::Auto).unwrap();
                let b = density_integrand(&fam, -t, Branch::Auto).unwrap();
                assert!((a - b).abs() < 1e-10 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn prediction_is_linear() {
        let f1 = |t: f64| (-t * t).exp();
        let f2 = |t: f64| 1.0 / (1.0 + t * t).powi(4);
        let a = density_prediction(f1, 500, 3).unwrap();
        let b = density_prediction(f2, 500, 3).unwrap();
        let c = density_prediction(|t| f1(t) + f2(t), 500, 3).unwrap();
        assert!((a + b - c).abs() < 1e-10 * c.abs(), "{a} {b} {c}");
    }

    #[test]
    fn corollary_identity() {
        for tau in [0.3, 1.0, 7.0] {
            let (lhs, rhs) = corollary_integrand(tau);
            assert!((lhs.re - rhs).abs() < 1e-12 && lhs.im.abs() < 1e-12);
        }
    }

    #[test]
    fn slow_decay_is_reported() {
        assert!(density_prediction(|t| 1.0 / (1.0 + t * t), 100, 1).is_err());
    }
}
