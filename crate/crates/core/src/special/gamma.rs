//! Log-gamma, digamma and polygamma by upward recurrence followed by the
//! Stirling / asymptotic series.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_30`.
pub(crate) const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SHIFT_TARGET: f64 = 10.0;

fn check_pole(s: Complex64, function: &'static str) -> Result<()> {
    if s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0 {
        return Err(Error::Pole { function, at: format!("{s}") });
    }
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::Domain(format!("{function}: non-finite argument {s}")));
    }
    Ok(())
}

/// Principal branch of `log Γ(s)`: analytic off `(-∞, 0]` and real on the
/// positive axis.
///
/// Relative error below `1e-12` for `|s| <= 100`.
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    check_pole(s, "log_gamma")?;
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < SHIFT_TARGET {
        shift += z.ln();
        z += 1.0;
    }
    let zinv = z.inv();
    let zinv2 = zinv * zinv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = zinv;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(10) {
        let k = (k + 1) as f64;
        series += pow * (b / (2.0 * k * (2.0 * k - 1.0)));
        pow *= zinv2;
    }
    let stirling = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series;
    Ok(stirling - shift)
}

/// `Γ(s)`.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    Ok(log_gamma(s)?.exp())
}

/// Real `log |Γ(x)|` for `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("ln_gamma_real requires x > 0, got {x}")));
    }
    Ok(log_gamma(Complex64::new(x, 0.0))?.re)
}

/// `ψ(s) = Γ'(s)/Γ(s)`; relative error below `1e-11` for `|s| <= 100`.
pub fn digamma(s: Complex64) -> Result<Complex64> {
    polygamma(0, s)
}

/// `ψ^{(m)}(s)`, the `m`-th derivative of the digamma function.
pub fn polygamma(m: u32, s: Complex64) -> Result<Complex64> {
    check_pole(s, if m == 0 { "digamma" } else { "polygamma" })?;
    if m > 20 {
        return Err(Error::InvalidArgument(format!("polygamma order {m} > 20")));
    }
    let mf = m as f64;
    let fact_m: f64 = (1..=m).map(|k| k as f64).product();
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
    let target = SHIFT_TARGET + 2.0 * mf;
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < target {
        if m == 0 {
            shift -= z.inv();
        } else {
            shift += z.powi(-(m as i32) - 1) * (sign * fact_m);
        }
        z += 1.0;
    }
    let zinv = z.inv();
    let asym = if m == 0 {
        let zinv2 = zinv * zinv;
        let mut acc = z.ln() - 0.5 * zinv;
        let mut pow = zinv2;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(12) {
            acc -= pow * (b / (2.0 * (k + 1) as f64));
            pow *= zinv2;
        }
        acc
    } else {
        // (-1)^{m+1} [ (m-1)!/z^m + m!/(2 z^{m+1}) + Σ B_2k (2k+m-1)!/((2k)! z^{2k+m}) ]
        let fact_m1: f64 = (1..m).map(|k| k as f64).product();
        let zm = zinv.powi(m as i32);
        let mut acc = zm * fact_m1 + zm * zinv * (0.5 * fact_m);
        let zinv2 = zinv * zinv;
        let mut pow = zm * zinv2;
        // ratio (2k+m-1)!/(2k)! built incrementally
        for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(14) {
            let kk = (k + 1) as u32;
            let ratio: f64 = ((2 * kk + 1)..=(2 * kk + m - 1)).map(|j| j as f64).product::<f64>();
            acc += pow * (b * ratio);
            pow *= zinv2;
        }
        acc * sign
    };
    Ok(asym + shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
        (a - b).norm() <= rel * b.norm().max(1e-300)
    }

    #[test]
    fn log_gamma_classical_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - 0.5 * PI.ln()).abs() < 1e-14 && half.im == 0.0);
        assert!(matches!(log_gamma(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn log_gamma_against_mpmath() {
        // mpmath.loggamma at 30 digits
        let cases = [
            (c(0.25, 1.5), c(-1.534_822_507_512_049_2, -1.277_469_867_236_725)),
            (c(-2.7, 0.3), c(-0.574_016_675_947_218_7, -9.565_454_460_480_571)),
            (c(3.0, 40.0), c(-52.689_155_060_822_64, 111.405_132_415_459_97)),
            (c(0.75, -80.0), c(-123.649_262_172_451_52, -270.954_960_064_239_3)),
        ];
        for (s, want) in cases {
            let got = log_gamma(s).unwrap();
            assert!(close(got, want, 1e-12), "{s}: {got} vs {want}");
        }
    }

    #[test]
    fn reflection_formula() {
        for &(x, y) in &[(0.3, 0.7), (0.5, 5.0), (-1.4, 2.0), (2.2, -9.0), (0.9, 0.01)] {
            let s = c(x, y);
            let lhs = log_gamma(s).unwrap() + log_gamma(1.0 - s).unwrap();
            let rhs = (PI / (s * PI).sin()).ln();
            let d = lhs - rhs;
            let k = (d.im / (2.0 * PI)).round();
            assert!(d.re.abs() < 1e-12 * lhs.norm().max(1.0), "{s}");
            assert!((d.im - 2.0 * PI * k).abs() < 1e-11 * lhs.norm().max(1.0), "{s}");
        }
    }

    #[test]
    fn digamma_values() {
        assert!((digamma(c(1.0, 0.0)).unwrap() + EULER_GAMMA).norm() < 1e-15);
        assert!((digamma(c(2.0, 0.0)).unwrap() - (1.0 - EULER_GAMMA)).norm() < 1e-15);
        // central difference of log_gamma at 1/4
        let h = 1e-5;
        let fd = (log_gamma(c(0.25 + h, 0.0)).unwrap() - log_gamma(c(0.25 - h, 0.0)).unwrap()) / (2.0 * h);
        assert!((digamma(c(0.25, 0.0)).unwrap() - fd).norm() < 1e-7);
        // ψ(1/4) = -γ - π/2 - 3 log 2
        let exact = -EULER_GAMMA - PI / 2.0 - 3.0 * 2f64.ln();
        assert!((digamma(c(0.25, 0.0)).unwrap().re - exact).abs() < 1e-14);
    }

    #[test]
    fn digamma_recurrence_and_symmetry() {
        for &(x, y) in &[(0.25, 0.5), (-3.3, 1.0), (7.0, -20.0), (0.1, 60.0)] {
            let s = c(x, y);
            let d = digamma(s + 1.0).unwrap() - digamma(s).unwrap() - s.inv();
            assert!(d.norm() < 1e-11 * digamma(s).unwrap().norm().max(1.0));
            assert!((digamma(s.conj()).unwrap() - digamma(s).unwrap().conj()).norm() < 1e-14);
            assert!((log_gamma(s.conj()).unwrap() - log_gamma(s).unwrap().conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn polygamma_against_mpmath() {
        // mpmath.polygamma(m, 1/4) and (m, 3/4)
        let cases = [
            (1, 0.25, 17.197_329_154_507_11),
            (2, 0.25, -129.327_739_937_536_92),
            (3, 0.25, 1_538.782_144_009_188_4),
            (5, 0.25, 491_552.513_767_681_3),
            (1, 0.75, 2.541_879_647_671_606_5),
            (4, 0.75, -102.800_605_815_417_47),
        ];
        for (m, x, want) in cases {
            let got = polygamma(m, c(x, 0.0)).unwrap().re;
            assert!((got - want).abs() < 1e-12 * want.abs(), "ψ^({m})({x}) = {got} vs {want}");
        }
    }
}
