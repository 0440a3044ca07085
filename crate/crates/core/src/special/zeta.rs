//! Riemann zeta by Euler–Maclaurin summation, with a Stieltjes-constant
//! Laurent expansion around the pole.

use num_complex::Complex64;

use super::gamma::{BERNOULLI_EVEN, EULER_GAMMA};
use crate::error::{Error, Result};

/// Stieltjes constants `γ_0..γ_8` (`scripts/stieltjes.py`).
pub const STIELTJES: [f64; 9] = [
    0.577_215_664_901_532_860_61,
    -0.072_815_845_483_676_724_861,
    -0.009_690_363_192_872_318_484_5,
    0.002_053_834_420_303_345_866_2,
    0.002_325_370_065_467_300_057_5,
    0.000_793_323_817_301_062_701_75,
    -0.000_238_769_345_430_199_609_87,
    -0.000_527_289_567_057_751_046_07,
    -0.000_352_123_353_803_039_509_60,
];

/// Radius around `s = 1` inside which the Laurent series is used.
pub const LAURENT_RADIUS: f64 = 0.1;

const BERNOULLI_TERMS: usize = 12;

fn check_pole(s: Complex64) -> Result<()> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { function: "zeta", at: "1".into() });
    }
    Ok(())
}

/// `(ζ(s), ζ'(s))` by Euler–Maclaurin with `N` summed terms.
fn euler_maclaurin(s: Complex64, n: usize) -> (Complex64, Complex64) {
    let mut z = Complex64::new(0.0, 0.0);
    let mut dz = Complex64::new(0.0, 0.0);
    for k in 1..n {
        let lk = (k as f64).ln();
        let term = (-s * lk).exp();
        z += term;
        dz -= term * lk;
    }
    let nf = n as f64;
    let ln_n = nf.ln();
    let n_pow = (-s * ln_n).exp(); // N^{-s}
    let sm1 = s - 1.0;
    let tail = n_pow * nf / sm1;
    z += tail + 0.5 * n_pow;
    dz += -tail * ln_n - tail / sm1 - 0.5 * n_pow * ln_n;
    // Σ_k B_2k/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1}
    let mut poly = s; // s(s+1)…(s+2k-2)
    let mut dpoly = Complex64::new(1.0, 0.0);
    let mut npow = n_pow / nf; // N^{-s-1}
    let mut fact = 2.0; // (2k)!
    for k in 1..=BERNOULLI_TERMS {
        let b = BERNOULLI_EVEN[k - 1] / fact;
        let term = poly * npow * b;
        z += term;
        dz += (dpoly * npow - poly * npow * ln_n) * b;
        // advance to k+1: multiply by (s+2k-1)(s+2k)
        for j in [2 * k - 1, 2 * k] {
            let f = s + j as f64;
            dpoly = dpoly * f + poly;
            poly *= f;
        }
        npow /= nf * nf;
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
    }
    (z, dz)
}

fn terms_for(s: Complex64) -> usize {
    (10.0f64.max(s.im.abs()) + 10.0 + 0.5 * (-s.re).max(0.0)).ceil() as usize
}

fn laurent(w: Complex64) -> (Complex64, Complex64) {
    // ζ(1+w) = 1/w + Σ (-1)^n γ_n w^n / n!
    let mut z = w.inv();
    let mut dz = -(w * w).inv();
    let mut pow = Complex64::new(1.0, 0.0);
    let mut fact = 1.0;
    for (n, g) in STIELTJES.iter().enumerate() {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        if n > 0 {
            fact *= n as f64;
        }
        z += pow * (sign * g / fact);
        if n + 1 < STIELTJES.len() {
            let fact1 = fact * (n + 1) as f64;
            let sign1 = -sign;
            dz += pow * ((n + 1) as f64 * sign1 * STIELTJES[n + 1] / fact1);
        }
        pow *= w;
    }
    (z, dz)
}

/// `ζ(s)`; relative error below `1e-10` for `|Im s| <= 200`, `Re s >= -1`.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    Ok(zeta_and_deriv(s)?.0)
}

/// `(ζ(s), ζ'(s))`.
pub fn zeta_and_deriv(s: Complex64) -> Result<(Complex64, Complex64)> {
    check_pole(s)?;
    let w = s - 1.0;
    if w.norm() < LAURENT_RADIUS {
        return Ok(laurent(w));
    }
    Ok(euler_maclaurin(s, terms_for(s)))
}

/// Euler–Maclaurin at a caller-chosen number of summed terms (used as a
/// self-convergence oracle).
pub fn zeta_em(s: Complex64, terms: usize) -> Result<Complex64> {
    check_pole(s)?;
    Ok(euler_maclaurin(s, terms.max(2)).0)
}

/// `ζ'(s)/ζ(s)`; near `s = 1` the Laurent forms of both are used, so that
/// `ζ'/ζ(1+w) + 1/w → γ_E`.
pub fn zeta_log_deriv(s: Complex64) -> Result<Complex64> {
    let (z, dz) = zeta_and_deriv(s)?;
    if z.norm() == 0.0 || !z.norm().is_finite() {
        return Err(Error::Domain(format!("zeta_log_deriv: ζ({s}) = {z}")));
    }
    Ok(dz / z)
}

/// `ζ'/ζ(1+w) + 1/w`, regular at `w = 0` where it equals `γ_E`.
pub fn zeta_log_deriv_regular(w: Complex64) -> Result<Complex64> {
    if w.norm() < 1e-8 {
        // next Laurent coefficient: -(γ_E² + 2γ_1)
        return Ok(EULER_GAMMA - (EULER_GAMMA * EULER_GAMMA + 2.0 * STIELTJES[1]) * w);
    }
    Ok(zeta_log_deriv(w + 1.0)? + w.inv())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::gamma::gamma;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn classical_values() {
        assert!((zeta(c(2.0, 0.0)).unwrap() - PI * PI / 6.0).norm() < 1e-15);
        assert!((zeta(c(0.0, 0.0)).unwrap() + 0.5).norm() < 1e-15);
        assert!((zeta(c(-1.0, 0.0)).unwrap() + 1.0 / 12.0).norm() < 1e-15);
        assert!(matches!(zeta(c(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn against_mpmath() {
        // mpmath.zeta at 30 digits
        let cases = [
            (c(0.5, 14.134_725_141_734_695), c(0.0, 0.0), 1e-11),
            (c(1.0, 0.2), c(0.577_409_627_211_262_9, -4.985_434_094_574_24), 1e-12),
            (c(0.5, 100.0), c(2.692_619_885_681_324, -0.020_386_029_602_598_16), 1e-10),
            (c(-0.7, 190.0), c(-8.078_520_320_388_785, 82.909_538_375_722_77), 1e-10),
            (c(1.05, 0.03), c(15.286_731_060_629_462, -8.821_359_538_793_256), 1e-12),
        ];
        for (s, want, tol) in cases {
            let got = zeta(s).unwrap();
            let scale = want.norm().max(1e-3);
            assert!((got - want).norm() < tol * scale, "ζ({s}) = {got}, want {want}");
        }
    }

    #[test]
    fn self_convergence_near_pole() {
        for s in [c(1.0, 0.2), c(1.2, 0.0), c(0.95, -0.05)] {
            let a = zeta(s).unwrap();
            let b = zeta_em(s, 2 * terms_for(s)).unwrap();
            assert!((a - b).norm() < 1e-10 * b.norm(), "{s}");
        }
    }

    #[test]
    fn functional_equation_in_strip() {
        for &(x, y) in &[(0.2, 3.0), (0.5, 17.0), (0.8, -40.0), (0.3, 0.5), (0.65, 120.0)] {
            let s = c(x, y);
            let rhs = Complex64::new(2.0, 0.0).powc(s)
                * Complex64::new(PI, 0.0).powc(s - 1.0)
                * (PI * s / 2.0).sin()
                * gamma(1.0 - s).unwrap()
                * zeta(1.0 - s).unwrap();
            let lhs = zeta(s).unwrap();
            assert!((lhs - rhs).norm() < 1e-8 * lhs.norm(), "{s}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn log_derivative() {
        // -Σ Λ(n)/n² from mpmath: ζ'(2)/ζ(2)
        let want = -0.569_960_993_094_532_7;
        assert!((zeta_log_deriv(c(2.0, 0.0)).unwrap().re - want).abs() < 1e-13);
        let partial: f64 = (2..200_000u64).map(|n| crate::numth::von_mangoldt(n) / (n * n) as f64).sum();
        assert!((-partial - want).abs() < 1e-4);

        let s = c(1.0, 4.0);
        let h = 1e-5;
        let fd = ((zeta(s + h).unwrap().ln() - zeta(s - h).unwrap().ln()) / (2.0 * h)).re;
        assert!((zeta_log_deriv(s).unwrap().re - fd).abs() < 1e-7);

        for w in [c(1e-9, 0.0), c(0.0, 1e-4), c(0.01, 0.02)] {
            let r = zeta_log_deriv_regular(w).unwrap();
            assert!((r - EULER_GAMMA).norm() < 0.25 * w.norm().max(1e-12) + 1e-9, "{w}: {r}");
        }
    }

    #[test]
    fn laurent_and_em_agree_at_switch() {
        for theta in [0.0, 1.0, 2.5, 4.0] {
            let w = Complex64::from_polar(LAURENT_RADIUS, theta);
            let (a, da) = laurent(w);
            let (b, db) = euler_maclaurin(w + 1.0, 40);
            assert!((a - b).norm() < 1e-12 * a.norm());
            assert!((da - db).norm() < 1e-10 * da.norm());
        }
    }

    #[test]
    fn conjugate_symmetry() {
        for s in [c(0.3, 7.0), c(1.02, 0.05), c(-0.5, 50.0)] {
            assert!((zeta(s.conj()).unwrap() - zeta(s).unwrap().conj()).norm() < 1e-14 * zeta(s).unwrap().norm());
            assert!(
                (zeta_log_deriv(s.conj()).unwrap() - zeta_log_deriv(s).unwrap().conj()).norm()
                    < 1e-13 * zeta_log_deriv(s).unwrap().norm()
            );
        }
    }
}
