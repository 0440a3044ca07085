//! Both sides of the explicit formula for a single character, and the
//! square-`n` (diagonal) part of the family sum.
//!
//! For `x >= 1`,
//!
//! ```text
//! Σ_ρ K(ρ) x^{iγ} = -x^{-½} Σ_n a(n/x) Λ(n) χ(n) + x^{-½} a(1/x) log(p/2π) + x^{-½} R(x)
//! ```
//!
//! where the bounded remainder is
//! `R(x) = a(1/x) log 2 + G(x) - [a = 0] K(0) - Σ_n Λ(n) χ(n) a(1/(xn)) / n`,
//! `G(x) = (1/2πi) ∫_{(-½)} K(s) x^s ½[ψ((s+a)/2) + ψ((1-s+a)/2)] ds`. The
//! `K(0)` term is the residue at the trivial zero `s = 0` of an even
//! character. [`ExplicitSides::residual`] is `|lhs - rhs|`, i.e.
//! `x^{-½}|R(x)|`; [`ExplicitSides::exact_residual`] also subtracts the
//! remainder and measures the numerical error of the whole pipeline.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::lfunc::QuadChar;
use crate::numth::{for_each_prime, li, sieve_primes};
use crate::quad::{integrate, QuadOptions};
use crate::special::digamma;
use crate::zeros::ZeroList;

/// Terms with `|a(n/x)| Λ(n) < TERM_FLOOR · x^{½}` are dropped.
pub const TERM_FLOOR: f64 = 1e-16;
/// Hard cap on `n` in the prime-power sums.
pub const N_CAP: u64 = 200_000_000;

/// The two sides of the explicit formula at one `(p, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExplicitSides {
    pub p: u64,
    pub x: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// `|lhs - rhs|`.
    pub residual: f64,
    /// `x^{-½} R(x)`.
    pub remainder: f64,
    /// `|lhs - rhs - x^{-½} R(x)|`.
    pub exact_residual: f64,
    /// Largest `n` included in the prime-power sums.
    pub n_max: u64,
}

/// Scans `u = start, start + ¼, …` until `bound(u) < thr` holds on eight
/// consecutive steps and returns the first of them; errors once `u`
/// passes `u_cap`.
fn scan_cutoff<F: Fn(f64) -> Result<f64>>(bound: F, start: f64, thr: f64, u_cap: f64) -> Result<f64> {
    let mut u = start;
    let mut quiet = 0;
    while quiet < 8 {
        if bound(u)? < thr {
            quiet += 1;
        } else {
            quiet = 0;
            if u > u_cap {
                return Err(Error::TruncationBudgetExceeded { needed: u.exp().min(1e19) as u64, cap: N_CAP });
            }
        }
        u += 0.25;
    }
    Ok(u - 0.25 * 8.0)
}

/// Largest `n` needed by [`prime_power_sums`] at scale `x`.
pub fn n_sum_cutoff(kernel: &KernelSpec, x: f64) -> Result<u64> {
    let lx = x.ln();
    let thr = TERM_FLOOR * x.sqrt();
    let u_cap = (N_CAP as f64).ln();
    // n = x e^u, Λ(n) <= log n
    let u1 = scan_cutoff(|u| Ok(kernel.a(u.exp())?.abs() * (u + lx).max(1.0)), 0.0, thr, u_cap - lx)?;
    // dual sum: n = e^u / x, a(1/(xn)) log(n) / n
    let u2 = scan_cutoff(|u| Ok(kernel.a((-u).exp())?.abs() * u.max(1.0) * x * (-u).exp()), lx, thr, u_cap + lx)?;
    let n = (x * u1.exp()).max(u2.exp() / x).ceil();
    if n > N_CAP as f64 {
        return Err(Error::TruncationBudgetExceeded { needed: n as u64, cap: N_CAP });
    }
    Ok(n as u64)
}

/// `(Σ a(n/x) Λ(n) χ(n), Σ Λ(n) χ(n) a(1/(xn)) / n, n_max)`.
pub fn prime_power_sums(chi: &QuadChar, x: f64, kernel: &KernelSpec) -> Result<(f64, f64, u64)> {
    let n_max = n_sum_cutoff(kernel, x)?;
    let mut direct = 0.0;
    let mut dual = 0.0;
    let mut failure = None;
    for_each_prime(n_max, |q| {
        let c = chi.chi(q) as f64;
        if c == 0.0 || failure.is_some() {
            return;
        }
        let lq = (q as f64).ln();
        let mut qk = q;
        let mut sign = c;
        loop {
            let n = qk as f64;
            match (kernel.a(n / x), kernel.a(1.0 / (x * n))) {
                (Ok(a1), Ok(a2)) => {
                    direct += sign * a1 * lq;
                    dual += sign * a2 * lq / n;
                }
                (Err(e), _) | (_, Err(e)) => {
                    failure = Some(e);
                    return;
                }
            }
            match qk.checked_mul(q) {
                Some(next) if next <= n_max => qk = next,
                _ => break,
            }
            sign *= c;
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok((direct, dual, n_max)),
    }
}

/// `G(x)`: the gamma-factor integral along `Re s = -½`.
pub fn gamma_factor_integral(chi: &QuadChar, x: f64, kernel: &KernelSpec) -> Result<f64> {
    let c = -0.5;
    let t_max = kernel.truncation_height(c)?;
    let a = chi.a as f64;
    let lx = x.ln();
    let integrand = |t: f64| -> f64 {
        let s = Complex64::new(c, t);
        let psi = match (digamma((s + a) / 2.0), digamma((1.0 - s + a) / 2.0)) {
            (Ok(u), Ok(v)) => 0.5 * (u + v),
            _ => return f64::NAN,
        };
        let k = kernel.eval_k(s).unwrap_or(Complex64::new(f64::NAN, 0.0));
        (k * (s * lx).exp() * psi).re
    };
    // the integrand at -t is the conjugate, so only the real part survives
    let r = integrate(integrand, 0.0, t_max, QuadOptions::tol(1e-14, 1e-12))?;
    Ok(r.value / std::f64::consts::PI)
}

/// `R(x)` from the module docs.
pub fn explicit_remainder(chi: &QuadChar, x: f64, kernel: &KernelSpec, dual_sum: f64) -> Result<f64> {
    let trivial = if chi.a == 0 { kernel.eval_k(Complex64::new(0.0, 0.0))?.re } else { 0.0 };
    Ok(kernel.a(1.0 / x)? * 2f64.ln() + gamma_factor_integral(chi, x, kernel)? - trivial - dual_sum)
}

/// `Σ_{ρ} K(ρ) x^{iγ}` over the zeros in the list, their conjugates and a
/// flagged central zero of (lower-bound) multiplicity two.
pub fn zero_side(zeros: &ZeroList, x: f64, kernel: &KernelSpec) -> Result<Complex64> {
    let lx = x.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    for &g in &zeros.gammas {
        let up = kernel.eval_k(Complex64::new(0.5, g))?;
        let down = kernel.eval_k(Complex64::new(0.5, -g))?;
        sum += up * Complex64::from_polar(1.0, g * lx) + down * Complex64::from_polar(1.0, -g * lx);
    }
    if zeros.central_flag {
        sum += 2.0 * kernel.k_half();
    }
    Ok(sum)
}

/// Fails unless `zeros` is certified and tall enough that the kernel mass
/// beyond its height is below `1e-14 K(½)`.
pub fn check_zero_list(zeros: &ZeroList, kernel: &KernelSpec) -> Result<()> {
    if !zeros.certified {
        return Err(Error::UncertifiedZeros { p: zeros.p });
    }
    let tail = kernel.weight(zeros.t_max).abs();
    if tail > 1e-14 * kernel.k_half().abs() {
        return Err(Error::Domain(format!(
            "zeros of p = {} only known to T = {}, where K(½+iT) = {tail:.2e} is not negligible",
            zeros.p, zeros.t_max
        )));
    }
    Ok(())
}

/// Both sides of the explicit formula.
pub fn explicit_formula_sides(chi: &QuadChar, zeros: &ZeroList, x: f64, kernel: &KernelSpec) -> Result<ExplicitSides> {
    if !(x >= 1.0 && x.is_finite()) {
        return Err(Error::Domain(format!("explicit formula needs x >= 1, got {x}")));
    }
    if zeros.p != chi.p {
        return Err(Error::InvalidArgument(format!("zero list for p = {} used with p = {}", zeros.p, chi.p)));
    }
    check_zero_list(zeros, kernel)?;
    let lhs = zero_side(zeros, x, kernel)?;
    let (direct, dual, n_max) = prime_power_sums(chi, x, kernel)?;
    let scale = x.powf(-0.5);
    let log_cond = (chi.p as f64 / (2.0 * std::f64::consts::PI)).ln();
    let rhs = Complex64::new(-scale * direct + scale * kernel.a(1.0 / x)? * log_cond, 0.0);
    let remainder = scale * explicit_remainder(chi, x, kernel, dual)?;
    Ok(ExplicitSides {
        p: chi.p,
        x,
        lhs,
        rhs,
        residual: (lhs - rhs).norm(),
        remainder,
        exact_residual: (lhs - rhs - remainder).norm(),
        n_max,
    })
}

/// Least-squares slope of `log residual` against `log x`, pooled over
/// primes with a separate intercept for each prime. Input rows are
/// `(p, x, residual)`.
pub fn pooled_log_slope(rows: &[(u64, f64, f64)]) -> f64 {
    let mut groups: std::collections::BTreeMap<u64, Vec<(f64, f64)>> = Default::default();
    for &(p, x, r) in rows {
        groups.entry(p).or_default().push((x.ln(), r.ln()));
    }
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for pts in groups.values() {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|q| q.0).sum::<f64>() / n;
        let my = pts.iter().map(|q| q.1).sum::<f64>() / n;
        for &(lx, ly) in pts {
            sxy += (lx - mx) * (ly - my);
            sxx += (lx - mx) * (lx - mx);
        }
    }
    sxy / sxx
}

/// The square-`n` part of the family sum at scale `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalDiagnostic {
    pub big_x: u64,
    pub v: u64,
    pub x: f64,
    /// `-x^{-½} Σ_p Σ_{n = □} a(n/x) Λ(n) (n|p)`.
    pub a1_numeric: f64,
    /// `-¼ K(½) Li(X)`.
    pub a1_main: f64,
    /// `-½ K(½) π(X; 4, v)`, the large-`x` limit of `a1_numeric`.
    pub a1_square_limit: f64,
    pub family_size: usize,
}

/// Literal square-`n` double sum against its main term.
pub fn diagonal_diagnostic(big_x: u64, v: u64, x: f64, kernel: &KernelSpec) -> Result<DiagonalDiagnostic> {
    if !(x >= 1.0 && x.is_finite()) {
        return Err(Error::Domain(format!("diagonal diagnostic needs x >= 1, got {x}")));
    }
    let family = sieve_primes(big_x, v)?;
    let lx = x.ln();
    let u = scan_cutoff(|u| Ok(kernel.a(u.exp())?.abs() * (u + lx).max(1.0)), 0.0, TERM_FLOOR * x.sqrt(), 60.0)?;
    let n_max = (x * u.exp()).ceil();
    let q_max = n_max.sqrt() as u64 + 1;
    // n = q^{2k}: Λ(n) = log q and (n|p) = 1 unless q = p
    let own = |q: u64| -> Result<f64> {
        let lq = (q as f64).ln();
        let q2 = (q as f64) * (q as f64);
        let mut n = q2;
        let mut s = 0.0;
        while n <= n_max {
            s += kernel.a(n / x)? * lq;
            n *= q2;
        }
        Ok(s)
    };
    let mut total = 0.0;
    let mut err = None;
    for_each_prime(q_max, |q| match own(q) {
        Ok(s) => total += s,
        Err(e) => err = Some(e),
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut sum = 0.0;
    for &p in &family.primes {
        sum += total - if p <= q_max { own(p)? } else { 0.0 };
    }
    let k_half = kernel.k_half();
    Ok(DiagonalDiagnostic {
        big_x,
        v,
        x,
        a1_numeric: -sum / x.sqrt(),
        a1_main: -0.25 * k_half * li(big_x as f64)?,
        a1_square_limit: -0.5 * k_half * family.count() as f64,
        family_size: family.count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::find_zeros;

    #[test]
    fn identity_holds_with_the_remainder() {
        let k = KernelSpec::gauss();
        for p in [101u64, 103] {
            let chi = QuadChar::new(p).unwrap();
            let zl = find_zeros(&chi, 8.0).unwrap();
            for x in [1.0, 10.0, 64.0] {
                let e = explicit_formula_sides(&chi, &zl, x, &k).unwrap();
                assert!(e.lhs.im.abs() < 1e-10, "{e:?}");
                assert!(e.exact_residual < 1e-9, "{e:?}");
                assert!(e.residual.is_finite() && e.rhs.re.is_finite());
            }
        }
    }

    #[test]
    fn remainder_of_even_characters_carries_k0() {
        // for large x the remainder tends to -K(0) = -e^{1/4} when a = 0
        let k = KernelSpec::gauss();
        let chi = QuadChar::new(101).unwrap();
        let (_, dual, _) = prime_power_sums(&chi, 1e3, &k).unwrap();
        let r = explicit_remainder(&chi, 1e3, &k, dual).unwrap();
        assert!((r + 0.25f64.exp()).abs() < 0.05, "{r}");
        let odd = QuadChar::new(103).unwrap();
        let (_, dual, _) = prime_power_sums(&odd, 1e3, &k).unwrap();
        assert!(explicit_remainder(&odd, 1e3, &k, dual).unwrap().abs() < 0.05);
    }

    #[test]
    fn cutoff_matches_gaussian_decay() {
        let k = KernelSpec::gauss();
        let n = n_sum_cutoff(&k, 1.0).unwrap();
        assert!(n > 1_000 && n < 1_000_000, "{n}");
        let n100 = n_sum_cutoff(&k, 100.0).unwrap();
        assert!(n100 as f64 / 100.0 < 5e5);
    }

    #[test]
    fn rejects_bad_input() {
        let k = KernelSpec::gauss();
        let chi = QuadChar::new(101).unwrap();
        let zl = find_zeros(&chi, 8.0).unwrap();
        assert!(explicit_formula_sides(&chi, &zl, 0.5, &k).is_err());
        let short = zl.truncated(3.0);
        assert!(explicit_formula_sides(&chi, &short, 4.0, &k).is_err());
        let mut bad = zl.clone();
        bad.certified = false;
        assert!(matches!(explicit_formula_sides(&chi, &bad, 4.0, &k), Err(Error::UncertifiedZeros { p: 101 })));
    }

    #[test]
    fn pooled_slope_recovers_power_law() {
        let rows: Vec<(u64, f64, f64)> =
            [(1u64, 2.0), (2, 5.0)].iter().flat_map(|&(p, c)| [4.0, 16.0, 64.0].map(move |x: f64| (p, x, c * x.powf(-0.5)))).collect();
        assert!((pooled_log_slope(&rows) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn diagonal_main_term() {
        let k = KernelSpec::gauss();
        let d = diagonal_diagnostic(10_000, 1, 100.0, &k).unwrap();
        assert!((d.a1_main + 0.25 * li(1e4).unwrap()).abs() < 1e-9);
        // large x: each prime contributes about -K(½)/2
        let big = diagonal_diagnostic(1_000, 1, 1e6, &k).unwrap();
        assert!((big.a1_numeric / big.a1_square_limit - 1.0).abs() < 0.01, "{big:?}");
    }
}
