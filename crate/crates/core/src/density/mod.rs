//! Family statistics of low-lying zeros: form factor, one-level density,
//! the Fourier pairing between them, and the explicit-formula diagnostics.
//!
//! Two normalizations are in use and both are named:
//! [`FORM_FACTOR_NORM`] (`¼ K(½) Li(X)`) for the form factor and the
//! nonvanishing chain, [`DENSITY_NORM`] (`½ K(½) Li(X)`) for the density
//! compared with `∫ r(α)(1 - sin 2πα / 2πα) dα`. The same double sum
//! divided by each differs by exactly a factor of two.

mod explicit;
mod testfn;

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::numth::{check_residue_class, li, sieve_primes};
use crate::quad::{integrate_with_breaks, QuadOptions};
use crate::zeros::{ensure_zeros, load_family, BulkReport, ZeroCache, ZeroList};

pub use explicit::{
    check_zero_list, diagonal_diagnostic, explicit_formula_sides, explicit_remainder, gamma_factor_integral,
    n_sum_cutoff, pooled_log_slope, prime_power_sums, zero_side, DiagonalDiagnostic, ExplicitSides, N_CAP, TERM_FLOOR,
};
pub use testfn::TestFunction;

/// Multiplier of `K(½) Li(X)` in the form-factor normalization.
pub const FORM_FACTOR_NORM: f64 = 0.25;
/// Multiplier of `K(½) Li(X)` in the one-level-density normalization.
pub const DENSITY_NORM: f64 = 0.5;

/// Certified zeros of every `L(s, χ_p)` with `p <= X`, `p ≡ v (mod 4)`.
#[derive(Debug, Clone)]
pub struct Family {
    pub big_x: u64,
    pub v: u64,
    pub t_max: f64,
    pub zeros: Vec<ZeroList>,
    /// `Li(X)`.
    pub li_x: f64,
}

impl Family {
    /// Wraps zero lists already in memory; they must cover exactly the
    /// sieved family.
    pub fn from_lists(big_x: u64, v: u64, t_max: f64, zeros: Vec<ZeroList>) -> Result<Family> {
        let set = sieve_primes(big_x, v)?;
        let have: Vec<u64> = zeros.iter().map(|z| z.p).collect();
        if have != set.primes {
            let missing: Vec<u64> = set.primes.iter().copied().filter(|p| !have.contains(p)).collect();
            return Err(Error::MissingCache { primes: missing });
        }
        if let Some(z) = zeros.iter().find(|z| !z.certified) {
            return Err(Error::UncertifiedZeros { p: z.p });
        }
        Ok(Family { big_x, v, t_max, zeros, li_x: li(big_x as f64)? })
    }

    /// Reads the family from the cache without computing anything.
    pub fn load(big_x: u64, v: u64, t_max: f64, cache: &ZeroCache) -> Result<Family> {
        let set = sieve_primes(big_x, v)?;
        let zeros = load_family(&set.primes, t_max, cache)?;
        Self::from_lists(big_x, v, t_max, zeros)
    }

    /// Fills the cache where needed, then loads the family.
    pub fn compute(big_x: u64, v: u64, t_max: f64, cache: &ZeroCache) -> Result<(Family, BulkReport)> {
        let set = sieve_primes(big_x, v)?;
        let report = ensure_zeros(&set.primes, t_max, cache);
        if let Some((p, _)) = report.failures.first() {
            return Err(Error::UncertifiedZeros { p: *p });
        }
        Ok((Self::load(big_x, v, t_max, cache)?, report))
    }

    /// `X*`, the number of primes in the family.
    pub fn x_star(&self) -> usize {
        self.zeros.len()
    }

    pub fn log_x(&self) -> f64 {
        (self.big_x as f64).ln()
    }

    /// `c · K(½) Li(X)`.
    pub fn normalizer(&self, c: f64, kernel: &KernelSpec) -> f64 {
        c * kernel.k_half() * self.li_x
    }

    /// Kernel-weighted positive ordinates plus the central mass.
    pub fn weighted(&self, kernel: &KernelSpec) -> Result<WeightedZeros> {
        for z in &self.zeros {
            check_zero_list(z, kernel)?;
        }
        let mut gammas = Vec::new();
        let mut weights = Vec::new();
        let mut central = 0.0;
        for z in &self.zeros {
            for &g in &z.gammas {
                gammas.push(g);
                weights.push(kernel.weight(g));
            }
            if z.central_flag {
                central += 2.0 * kernel.k_half();
            }
        }
        Ok(WeightedZeros { gammas, weights, central })
    }
}

/// Flattened `(γ, K(½ + iγ))` over a family, `γ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedZeros {
    pub gammas: Vec<f64>,
    pub weights: Vec<f64>,
    /// Contribution of flagged central zeros, counted with multiplicity 2.
    pub central: f64,
}

impl WeightedZeros {
    /// `Σ_ρ K(ρ) g(γ)` for even `g`, pairing `γ` with `-γ`.
    pub fn sum_even<G: Fn(f64) -> f64 + Sync>(&self, g: G) -> f64 {
        // collected in order and summed sequentially so results do not depend on scheduling
        let terms: Vec<f64> = self.gammas.par_iter().zip(&self.weights).map(|(&x, &w)| 2.0 * w * g(x)).collect();
        let paired: f64 = terms.iter().sum();
        paired + self.central * g(0.0)
    }

    /// `Σ_ρ K(ρ) X^{iαγ}`, real by the `±γ` pairing.
    pub fn cosine_sum(&self, alpha: f64, log_x: f64) -> f64 {
        let w = alpha * log_x;
        let paired: f64 = self.gammas.iter().zip(&self.weights).map(|(&x, &k)| 2.0 * k * (w * x).cos()).sum();
        paired + self.central
    }
}

/// `F(α, X)` at every grid point, with the main-term prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct FormFactorGrid {
    pub big_x: u64,
    pub v: u64,
    pub kernel: String,
    pub alphas: Vec<f64>,
    pub values: Vec<f64>,
    pub prediction: Vec<f64>,
}

/// `F(α, X) = (¼ K(½) Li(X))^{-1} Σ_p Σ_ρ K(ρ) X^{iαγ}`.
pub fn form_factor(family: &Family, alpha: f64, kernel: &KernelSpec) -> Result<f64> {
    let wz = family.weighted(kernel)?;
    Ok(wz.cosine_sum(alpha, family.log_x()) / family.normalizer(FORM_FACTOR_NORM, kernel))
}

/// `F` and its prediction over a grid of `α`.
pub fn form_factor_grid(family: &Family, alphas: &[f64], kernel: &KernelSpec) -> Result<FormFactorGrid> {
    let wz = family.weighted(kernel)?;
    let norm = family.normalizer(FORM_FACTOR_NORM, kernel);
    let lx = family.log_x();
    let values: Vec<f64> = alphas.par_iter().map(|&a| wz.cosine_sum(a, lx) / norm).collect();
    let prediction = alphas.iter().map(|&a| form_factor_prediction(family.big_x, a, kernel)).collect::<Result<_>>()?;
    Ok(FormFactorGrid {
        big_x: family.big_x,
        v: family.v,
        kernel: kernel.name().to_string(),
        alphas: alphas.to_vec(),
        values,
        prediction,
    })
}

/// Main terms of the asymptotic formula for `F(α, X)`:
/// `-1 + (½K(½))^{-1} X^{-|α|/2} a(X^{-|α|}) (X - Li(X) log 2π) / Li(X)`.
pub fn form_factor_prediction(big_x: u64, alpha: f64, kernel: &KernelSpec) -> Result<f64> {
    if big_x < 2 {
        return Err(Error::Domain(format!("form factor prediction needs X >= 2, got {big_x}")));
    }
    let x = big_x as f64;
    let li_x = li(x)?;
    let a = alpha.abs();
    let y = x.powf(-a);
    let amp = if y > 0.0 { x.powf(-a / 2.0) * kernel.a(y)? } else { 0.0 };
    Ok(-1.0 + amp / (0.5 * kernel.k_half()) * (x - li_x * (2.0 * PI).ln()) / li_x)
}

/// The kernel-weighted double sum `Σ_p Σ_ρ K(ρ) r(γ log X / 2π)` under both
/// normalizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalDensity {
    pub raw_sum: f64,
    /// Divided by `¼ K(½) Li(X)`; equals `∫ F(α,X) r̂(α) dα`.
    pub form_factor_normalized: f64,
    /// Divided by `½ K(½) Li(X)`; compared with [`limit_density`].
    pub density_normalized: f64,
}

pub fn one_level_density_empirical(family: &Family, tf: &TestFunction, kernel: &KernelSpec) -> Result<EmpiricalDensity> {
    let wz = family.weighted(kernel)?;
    let scale = family.log_x() / (2.0 * PI);
    let raw_sum = wz.sum_even(|g| tf.r(g * scale));
    Ok(EmpiricalDensity {
        raw_sum,
        form_factor_normalized: raw_sum / family.normalizer(FORM_FACTOR_NORM, kernel),
        density_normalized: raw_sum / family.normalizer(DENSITY_NORM, kernel),
    })
}

/// `∫ F(α, X) r̂(α) dα` by quadrature, split at the kinks of `r̂`.
pub fn form_factor_pairing(family: &Family, tf: &TestFunction, kernel: &KernelSpec) -> Result<f64> {
    if !tf.support_bound.is_finite() {
        return Err(Error::InvalidArgument(format!("{} has unbounded Fourier support", tf.name)));
    }
    let wz = family.weighted(kernel)?;
    let norm = family.normalizer(FORM_FACTOR_NORM, kernel);
    let lx = family.log_x();
    let opts = QuadOptions { abs_tol: 1e-10, rel_tol: 1e-12, max_intervals: 20_000 };
    let half = integrate_with_breaks(|a: f64| wz.cosine_sum(a, lx) * tf.r_hat(a), 0.0, tf.support_bound, &tf.kinks(), opts)?;
    Ok(2.0 * half.value / norm)
}

/// Both sides of the Fourier pairing identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairingCheck {
    pub fourier_side: f64,
    pub zero_side: f64,
    pub residual: f64,
}

/// `|∫ F r̂ dα - (¼K(½)Li(X))^{-1} Σ_p Σ_ρ K(ρ) r(γ log X / 2π)|`.
pub fn pairing_identity_check(family: &Family, tf: &TestFunction, kernel: &KernelSpec) -> Result<PairingCheck> {
    let fourier_side = form_factor_pairing(family, tf, kernel)?;
    let zero_side = one_level_density_empirical(family, tf, kernel)?.form_factor_normalized;
    Ok(PairingCheck { fourier_side, zero_side, residual: (fourier_side - zero_side).abs() })
}

/// `∫ r(α)(1 - sin 2πα / 2πα) dα` two ways.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitDensity {
    /// Quadrature on the `r` side.
    pub direct: f64,
    /// `r̂(0) - ½ ∫_{-1}^{1} r̂(α) dα`.
    pub fourier: f64,
}

pub fn limit_density(tf: &TestFunction) -> Result<LimitDensity> {
    let sine_kernel = |u: f64| {
        let z = 2.0 * PI * u;
        if z.abs() < 1e-4 {
            z * z / 6.0
        } else {
            1.0 - z.sin() / z
        }
    };
    let direct = testfn::even_line_integral(|u| tf.r(u) * sine_kernel(u), 1e4);
    let fourier = tf.r_hat(0.0) - 0.5 * tf.r_hat_mass_within_one()?;
    if !direct.is_finite() {
        return Err(Error::QuadratureNonConvergence(format!("limit density of {}", tf.name)));
    }
    Ok(LimitDensity { direct, fourier })
}

/// Aggregated density statistics of one family and test function.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub big_x: u64,
    pub v: u64,
    pub test_function: String,
    /// `DENSITY_NORM`-normalized empirical double sum.
    pub empirical: f64,
    pub empirical_form_factor_normalized: f64,
    pub limit_value: f64,
    /// Ratios prediction for the same statistic, `DENSITY_NORM`-normalized.
    pub ratios_value: f64,
    pub x_star: usize,
    pub pairing_residual: Option<f64>,
}

pub fn density_report(family: &Family, tf: &TestFunction, kernel: &KernelSpec) -> Result<DensityReport> {
    check_residue_class(family.v)?;
    let emp = one_level_density_empirical(family, tf, kernel)?;
    let limit = limit_density(tf)?;
    let ratios_value = crate::ratios::kernel_weighted_density_prediction(tf, kernel, family.big_x, family.v)?;
    let pairing_residual =
        if tf.support_bound.is_finite() { Some(pairing_identity_check(family, tf, kernel)?.residual) } else { None };
    Ok(DensityReport {
        big_x: family.big_x,
        v: family.v,
        test_function: tf.name.clone(),
        empirical: emp.density_normalized,
        empirical_form_factor_normalized: emp.form_factor_normalized,
        limit_value: limit.direct,
        ratios_value,
        x_star: family.x_star(),
        pairing_residual,
    })
}
