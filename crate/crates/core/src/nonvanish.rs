//! Central values `L(½, χ_p)` over a family and the Fejér-kernel bound on
//! the proportion of vanishing central values.
//!
//! Numerics cannot certify `L(½) = 0`, so a record is either `Nonzero` or
//! `Undetermined` (below the tolerance), never "zero".

use rayon::prelude::*;

use crate::density::{form_factor_pairing, one_level_density_empirical, Family, TestFunction};
use crate::error::Result;
use crate::kernel::{mellin_recover_k, KernelSpec, MellinPair};
use crate::lfunc::{central_value, QuadChar};
use crate::numth::sieve_primes;

/// `λ` values used in reports.
pub const LAMBDA_GRID: [f64; 4] = [0.5, 0.7, 0.9, 0.99];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralStatus {
    Nonzero,
    Undetermined,
}

impl CentralStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CentralStatus::Nonzero => "nonzero",
            CentralStatus::Undetermined => "undetermined",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralRecord {
    pub p: u64,
    pub central_value: f64,
    pub status: CentralStatus,
    /// Lower bound on the central multiplicity: 2 for undetermined records,
    /// since the multiplicity is even (root number +1).
    pub m_p_lower: u8,
}

impl CentralRecord {
    /// Classifies `value` against `scale · tol_zero(p)`.
    pub fn classify(chi: &QuadChar, value: f64, scale: f64) -> Self {
        let status = if value.abs() >= scale * chi.tol_zero() { CentralStatus::Nonzero } else { CentralStatus::Undetermined };
        CentralRecord {
            p: chi.p,
            central_value: value,
            status,
            m_p_lower: if status == CentralStatus::Undetermined { 2 } else { 0 },
        }
    }
}

/// Records for every prime, plus the primes whose evaluation failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Survey {
    pub big_x: u64,
    pub v: u64,
    pub records: Vec<CentralRecord>,
    pub failures: Vec<(u64, String)>,
}

impl Survey {
    /// Fraction of evaluated primes whose central value is nonzero.
    pub fn proportion_nonzero(&self) -> f64 {
        self.proportion_nonzero_at(1.0)
    }

    /// The same fraction with the tolerance multiplied by `scale`.
    pub fn proportion_nonzero_at(&self, scale: f64) -> f64 {
        if self.records.is_empty() {
            return 0.0;
        }
        let nonzero = self
            .records
            .iter()
            .filter(|r| {
                let chi = QuadChar::new(r.p).expect("surveyed primes are odd primes");
                CentralRecord::classify(&chi, r.central_value, scale).status == CentralStatus::Nonzero
            })
            .count();
        nonzero as f64 / self.records.len() as f64
    }

    pub fn undetermined(&self) -> usize {
        self.records.iter().filter(|r| r.status == CentralStatus::Undetermined).count()
    }
}

/// `L(½, χ_p)` for every `p <= X`, `p ≡ v (mod 4)`, in parallel.
pub fn survey_central_values(big_x: u64, v: u64) -> Result<Survey> {
    let set = sieve_primes(big_x, v)?;
    let results: Vec<(u64, Result<CentralRecord>)> = set
        .primes
        .par_iter()
        .map(|&p| {
            let r = QuadChar::new(p).and_then(|chi| Ok(CentralRecord::classify(&chi, central_value(&chi)?, 1.0)));
            (p, r)
        })
        .collect();
    let mut records = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for (p, r) in results {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => failures.push((p, e.to_string())),
        }
    }
    Ok(Survey { big_x, v, records, failures })
}

/// The Fejér-kernel bound at one `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FejerBound {
    pub lambda: f64,
    /// `∫ F(α, X) r̂(α) dα` by quadrature.
    pub lhs_fourier: f64,
    /// `(¼ K(½) Li(X))^{-1} Σ_p Σ_ρ K(ρ) r(γ log X / 2π)`.
    pub lhs_zero_sum: f64,
    /// `-1 + 2/λ`.
    pub bound: f64,
    /// `lhs_zero_sum - bound`; positive values are the finite-`X` excess.
    pub slack: f64,
    /// `(¼ Li(X))^{-1} Σ_p m_p` with the flagged central multiplicities.
    pub central_mass: f64,
}

impl FejerBound {
    pub fn agreement(&self) -> f64 {
        (self.lhs_fourier - self.lhs_zero_sum).abs()
    }

    /// Upper bound on the proportion of vanishing central values implied by
    /// the zero-sum side: `lhs / 4` of the family, read through `π(X;4,v) ~ ½ Li(X)`.
    pub fn vanishing_proportion_bound(&self) -> f64 {
        self.lhs_zero_sum / 4.0
    }
}

pub fn fejer_bound(lambda: f64, family: &Family, kernel: &KernelSpec) -> Result<FejerBound> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(crate::Error::Domain(format!("Fejér bound needs 0 < λ < 1, got {lambda}")));
    }
    let tf = TestFunction::fejer(lambda)?;
    let lhs_fourier = form_factor_pairing(family, &tf, kernel)?;
    let lhs_zero_sum = one_level_density_empirical(family, &tf, kernel)?.form_factor_normalized;
    let bound = -1.0 + 2.0 / lambda;
    let flagged = family.zeros.iter().filter(|z| z.central_flag).count() as f64;
    Ok(FejerBound {
        lambda,
        lhs_fourier,
        lhs_zero_sum,
        bound,
        slack: lhs_zero_sum - bound,
        central_mass: 2.0 * flagged / (0.25 * family.li_x),
    })
}

/// `∫_0^∞ t^{½} a(t) dt/t`, which equals `K(½)`.
pub fn mellin_half_identity(kernel: &KernelSpec) -> Result<f64> {
    Ok(mellin_recover_k(&MellinPair::new(kernel.clone()), num_complex::Complex64::new(0.5, 0.0))?.re)
}
