//! The analytic weight `K(s)` attached to each zero and its Mellin companion
//! `a(y) = (1/2π) ∫ K(c+it) y^{-c-it} dt`, so that `K(s) = ∫_0^∞ a(y) y^{s-1} dy`.
//!
//! Built-ins are the Gaussians `K(s) = exp(κ (s-½)²)` (`gauss` is `κ = 1`,
//! `gauss2` is `κ = 2`), for which
//! `a(y) = y^{-1/2} exp(-(log y)²/(4κ)) / (2√(πκ))`.
//! Other kernels can be supplied as closures and are checked on a grid for
//! the required symmetries before use.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_to_infinity, QuadOptions};

type KernelFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;
type AFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `|K|` below which the contour integral for `a(y)` is truncated.
pub const TRUNCATION_LEVEL: f64 = 1e-18;

/// Strip of analyticity `-1 < Re s < 2` required of every kernel.
pub const STRIP: (f64, f64) = (-1.0, 2.0);

#[derive(Clone)]
pub struct KernelSpec {
    name: String,
    k: KernelFn,
    contour: f64,
    closed_form_a: Option<AFn>,
}

impl fmt::Debug for KernelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KernelSpec")
            .field("name", &self.name)
            .field("contour", &self.contour)
            .field("closed_form_a", &self.closed_form_a.is_some())
            .finish()
    }
}

impl KernelSpec {
    /// `K(s) = exp(κ (s - ½)²)` with its closed-form Mellin companion.
    pub fn gaussian(kappa: f64) -> Result<Self> {
        if !(kappa > 0.0) {
            return Err(Error::InvalidArgument(format!("gaussian kernel needs κ > 0, got {kappa}")));
        }
        let norm = 1.0 / (2.0 * (PI * kappa).sqrt());
        let name = if kappa == 1.0 {
            "gauss".to_string()
        } else if kappa == 2.0 {
            "gauss2".to_string()
        } else {
            format!("gauss[{kappa}]")
        };
        Ok(KernelSpec {
            name,
            k: Arc::new(move |s: Complex64| {
                let d = s - 0.5;
                (d * d * kappa).exp()
            }),
            contour: 0.5,
            closed_form_a: Some(Arc::new(move |y: f64| {
                let l = y.ln();
                norm * (-0.5 * l - l * l / (4.0 * kappa)).exp()
            })),
        })
    }

    /// The default kernel `exp((s - ½)²)`.
    pub fn gauss() -> Self {
        Self::gaussian(1.0).expect("κ = 1 is valid")
    }

    /// `exp(2 (s - ½)²)`.
    pub fn gauss2() -> Self {
        Self::gaussian(2.0).expect("κ = 2 is valid")
    }

    /// Built-in kernel by CLI name.
    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "gauss" => Ok(Self::gauss()),
            "gauss2" => Ok(Self::gauss2()),
            other => Err(Error::InvalidArgument(format!("unknown kernel {other:?} (expected gauss or gauss2)"))),
        }
    }

    /// A user kernel. Rejected unless, on a grid, `K(½+it) = K(½-it)`,
    /// `K(s̄) = conj K(s)` and `K(½) ≠ 0`.
    pub fn custom<F>(name: &str, k: F, contour: f64) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        if !(contour > STRIP.0 && contour < STRIP.1) {
            return Err(Error::InvalidArgument(format!("contour {contour} outside (-1, 2)")));
        }
        let spec = KernelSpec { name: name.to_string(), k: Arc::new(k), contour, closed_form_a: None };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let k_half = (self.k)(Complex64::new(0.5, 0.0));
        if k_half.norm() == 0.0 || !k_half.norm().is_finite() {
            return Err(Error::InvalidArgument(format!("kernel {}: K(1/2) = {k_half}", self.name)));
        }
        for i in 0..=400 {
            let t = 0.25 * i as f64;
            let a = (self.k)(Complex64::new(0.5, t));
            let b = (self.k)(Complex64::new(0.5, -t));
            let scale = a.norm().max(b.norm()).max(1e-300);
            if (a - b).norm() > 1e-12 * scale {
                return Err(Error::InvalidArgument(format!("kernel {}: K(1/2+it) != K(1/2-it) at t = {t}", self.name)));
            }
            for sigma in [-0.5, 0.2, 1.3] {
                let s = Complex64::new(sigma, t);
                let a = (self.k)(s.conj());
                let b = (self.k)(s).conj();
                if (a - b).norm() > 1e-12 * a.norm().max(1e-300) {
                    return Err(Error::InvalidArgument(format!("kernel {}: K(conj s) != conj K(s) at {s}", self.name)));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn default_contour(&self) -> f64 {
        self.contour
    }

    pub fn has_closed_form(&self) -> bool {
        self.closed_form_a.is_some()
    }

    /// `K(s)` for `-1 < Re s < 2`.
    pub fn eval_k(&self, s: Complex64) -> Result<Complex64> {
        if !(s.re > STRIP.0 && s.re < STRIP.1) {
            return Err(Error::Domain(format!("kernel evaluated at {s}, outside -1 < Re s < 2")));
        }
        Ok((self.k)(s))
    }

    /// `K(½ + iγ)`, the weight of a zero at height `γ`.
    pub fn weight(&self, gamma: f64) -> f64 {
        (self.k)(Complex64::new(0.5, gamma)).re
    }

    /// `K(½)`.
    pub fn k_half(&self) -> f64 {
        self.weight(0.0)
    }

    /// Height beyond which `|K(c+it)| < TRUNCATION_LEVEL`.
    pub fn truncation_height(&self, c: f64) -> Result<f64> {
        let mut t = 0.0;
        let mut below = 0;
        while t < 1e4 {
            let v = (self.k)(Complex64::new(c, t)).norm().max((self.k)(Complex64::new(c, -t)).norm());
            if v < TRUNCATION_LEVEL {
                below += 1;
                if below >= 4 {
                    return Ok(t);
                }
            } else {
                below = 0;
            }
            t += 0.125;
        }
        Err(Error::QuadratureNonConvergence(format!(
            "kernel {} does not decay below {TRUNCATION_LEVEL:e} on Re s = {c}",
            self.name
        )))
    }

    /// `a(y)` by quadrature of the defining contour integral on `Re s = c`.
    pub fn a_numeric(&self, y: f64, c: f64) -> Result<f64> {
        if !(y > 0.0) {
            return Err(Error::Domain(format!("a(y) requires y > 0, got {y}")));
        }
        if !(c > STRIP.0 && c < STRIP.1) {
            return Err(Error::Domain(format!("contour {c} outside (-1, 2)")));
        }
        let tmax = self.truncation_height(c)?;
        let ly = y.ln();
        let k = &self.k;
        let integrand = |t: f64| {
            let s = Complex64::new(c, t);
            k(s) * (-s * ly).exp()
        };
        // the attainable accuracy is set by ∫|integrand|, not by the result
        let scale = integrate(|t: f64| integrand(t).norm(), 0.0, tmax, QuadOptions::tol(0.0, 1e-4))?.value;
        // real part only: the imaginary part cancels between t and -t
        let r = integrate(
            |t: f64| integrand(t).re,
            0.0,
            tmax,
            QuadOptions { abs_tol: 1e-15 * scale, rel_tol: 1e-14, max_intervals: 2000 },
        )?;
        Ok(r.value / PI)
    }

    /// `a(y)` on the contour that best balances `y^{-c}` against the growth
    /// of `K`, clamped inside the strip.
    pub fn a_numeric_auto(&self, y: f64) -> Result<f64> {
        let c = (0.5 + 0.5 * y.ln()).clamp(-0.9, 1.9);
        self.a_numeric(y, c)
    }

    /// The closed form of `a(y)`, when the kernel has one.
    pub fn a_closed_form(&self, y: f64) -> Option<f64> {
        self.closed_form_a.as_ref().map(|a| a(y))
    }

    /// `a(y)`: closed form when available, otherwise numeric.
    pub fn a(&self, y: f64) -> Result<f64> {
        match &self.closed_form_a {
            Some(a) => {
                if !(y > 0.0) {
                    return Err(Error::Domain(format!("a(y) requires y > 0, got {y}")));
                }
                Ok(a(y))
            }
            None => self.a_numeric_auto(y),
        }
    }
}

/// A kernel together with the choice of how its Mellin companion is
/// evaluated.
#[derive(Debug, Clone)]
pub struct MellinPair {
    pub spec: KernelSpec,
    pub numeric: bool,
}

impl MellinPair {
    pub fn new(spec: KernelSpec) -> Self {
        let numeric = !spec.has_closed_form();
        MellinPair { spec, numeric }
    }

    /// Forces the contour-integral evaluation even when a closed form exists.
    pub fn numeric(spec: KernelSpec) -> Self {
        MellinPair { spec, numeric: true }
    }

    pub fn a(&self, y: f64) -> Result<f64> {
        if self.numeric {
            self.spec.a_numeric_auto(y)
        } else {
            self.spec.a(y)
        }
    }
}

/// `∫_0^∞ a(t) t^{s-1} dt`, which recovers `K(s)` inside the strip.
pub fn mellin_recover_k(pair: &MellinPair, s: Complex64) -> Result<Complex64> {
    if !(s.re > STRIP.0 && s.re < STRIP.1) {
        return Err(Error::Domain(format!("Mellin inversion at {s}, outside -1 < Re s < 2")));
    }
    let f = |u: f64| -> Complex64 {
        match pair.a(u.exp()) {
            Ok(a) => (s * u).exp() * a,
            Err(_) => Complex64::new(f64::NAN, 0.0),
        }
    };
    let opts = QuadOptions { abs_tol: 1e-13, rel_tol: 1e-12, max_intervals: 4000 };
    let right = integrate_to_infinity(f, 0.0, 4.0, opts)?;
    let left = integrate_to_infinity(|u: f64| f(-u), 0.0, 4.0, opts)?;
    let v = right.value + left.value;
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(Error::QuadratureNonConvergence(format!("Mellin inversion at {s} produced {v}")));
    }
    Ok(v)
}

/// Largest `|a(1/y) - y a(y)|` relative to `y a(y)` over `ys`.
pub fn self_duality_defect(pair: &MellinPair, ys: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &y in ys {
        let lhs = pair.a(1.0 / y)?;
        let rhs = y * pair.a(y)?;
        worst = worst.max((lhs - rhs).abs() / rhs.abs().max(1e-300));
    }
    Ok(worst)
}

/// `max |a(y)| y^c` over a grid, the decay bound `a(y) ≪ y^{-c}`.
pub fn decay_constant(pair: &MellinPair, c: f64, ys: &[f64]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &y in ys {
        worst = worst.max(pair.a(y)?.abs() * y.powf(c));
    }
    Ok(worst)
}

/// `∫_0^∞ |a'(u)| u du` by central differences of `a`, truncated where the
/// integrand is negligible.
pub fn derivative_moment(pair: &MellinPair) -> Result<f64> {
    let f = |v: f64| -> f64 {
        // u = e^v, du = u dv
        let u = v.exp();
        let h = 1e-5 * u;
        match (pair.a(u + h), pair.a(u - h)) {
            (Ok(p), Ok(m)) => ((p - m) / (2.0 * h)).abs() * u * u,
            _ => f64::NAN,
        }
    };
    let opts = QuadOptions { abs_tol: 1e-9, rel_tol: 1e-7, max_intervals: 4000 };
    let right = integrate_to_infinity(f, 0.0, 4.0, opts)?;
    let left = integrate_to_infinity(|v: f64| f(-v), 0.0, 4.0, opts)?;
    Ok(right.value + left.value)
}

/// Log-spaced grid of `n` points on `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn default_kernel_values() {
        let k = KernelSpec::gauss();
        assert_eq!(k.eval_k(c(0.5, 0.0)).unwrap(), c(1.0, 0.0));
        assert!((k.eval_k(c(0.5, 2.0)).unwrap() - c((-4.0f64).exp(), 0.0)).norm() < 1e-16);
        for t in [0.3, 1.7] {
            assert_eq!(k.eval_k(c(0.5, t)).unwrap(), k.eval_k(c(0.5, -t)).unwrap());
        }
        assert!(k.eval_k(c(2.5, 0.0)).is_err());
    }

    #[test]
    fn truncation_height_for_default() {
        let t = KernelSpec::gauss().truncation_height(0.5).unwrap();
        assert!((6.4..7.0).contains(&t), "{t}");
    }

    #[test]
    fn a_at_one_and_e_squared() {
        let k = KernelSpec::gauss();
        let want = 1.0 / (2.0 * PI.sqrt());
        assert!((k.a_numeric(1.0, 0.5).unwrap() - want).abs() < 1e-14);
        assert!((k.a_closed_form(1.0).unwrap() - want).abs() < 1e-16);
        let e2 = 2f64.exp();
        assert!((k.a_closed_form(e2).unwrap() - (-2.0f64).exp() * want).abs() < 1e-16);
    }

    #[test]
    fn numeric_matches_closed_form_on_grid() {
        for k in [KernelSpec::gauss(), KernelSpec::gauss2()] {
            for y in log_grid(1e-3, 1e3, 49) {
                let n = k.a_numeric_auto(y).unwrap();
                let cf = k.a_closed_form(y).unwrap();
                assert!((n - cf).abs() < 1e-9 * cf, "{} y={y}: {n} vs {cf}", k.name());
            }
        }
    }

    #[test]
    fn contour_independence() {
        let k = KernelSpec::gauss();
        let a = k.a_numeric(2.0, -0.5).unwrap();
        let b = k.a_numeric(2.0, 1.5).unwrap();
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
    }

    #[test]
    fn self_duality_and_decay() {
        let pair = MellinPair::new(KernelSpec::gauss());
        assert!(self_duality_defect(&pair, &log_grid(1e-3, 1e3, 61)).unwrap() < 1e-12);
        let numeric = MellinPair::numeric(KernelSpec::gauss());
        for y in [0.1, 3.0, 50.0] {
            let d = numeric.a(1.0 / y).unwrap() - y * numeric.a(y).unwrap();
            assert!(d.abs() < 1e-12, "{y}: {d}");
        }
        assert!(decay_constant(&pair, 1.5, &log_grid(1.0, 1e3, 40)).unwrap() < 10.0);
        assert!(decay_constant(&pair, -0.5, &log_grid(1e-3, 1.0, 40)).unwrap() < 10.0);
        let m = derivative_moment(&pair).unwrap();
        assert!(m.is_finite() && m > 0.0);
    }

    #[test]
    fn mellin_round_trip() {
        let pair = MellinPair::new(KernelSpec::gauss());
        for (s, want) in [
            (c(0.5, 0.0), c(1.0, 0.0)),
            (c(1.0, 0.0), c(0.25f64.exp(), 0.0)),
            (c(0.5, 1.0), c((-1.0f64).exp(), 0.0)),
        ] {
            let got = mellin_recover_k(&pair, s).unwrap();
            assert!((got - want).norm() < 1e-8, "{s}: {got}");
        }
        let numeric = MellinPair::numeric(KernelSpec::gauss2());
        let s = c(1.2, 0.7);
        let got = mellin_recover_k(&numeric, s).unwrap();
        let want = numeric.spec.eval_k(s).unwrap();
        assert!((got - want).norm() < 1e-7, "{got} vs {want}");
    }

    #[test]
    fn custom_kernels_are_validated() {
        let ok = KernelSpec::custom("sech", |s: Complex64| {
            let d = s - 0.5;
            (d * d * 1.5).exp() * (d * d * 0.1).cos()
        }, 0.5);
        assert!(ok.is_ok());
        let asym = KernelSpec::custom("tilted", |s: Complex64| ((s - 0.5) * (s - 0.5) + (s - 0.5) * 0.1).exp(), 0.5);
        assert!(asym.is_err());
        let vanishing = KernelSpec::custom("zero-at-half", |s: Complex64| (s - 0.5) * (s - 0.5) * ((s - 0.5) * (s - 0.5)).exp(), 0.5);
        assert!(vanishing.is_err());
        assert!(KernelSpec::from_name("box").is_err());
    }

    proptest! {
        #[test]
        fn closed_form_self_duality(ly in -7.0f64..7.0, kappa in 0.5f64..3.0) {
            let k = KernelSpec::gaussian(kappa).unwrap();
            let y = ly.exp();
            let lhs = k.a_closed_form(1.0 / y).unwrap();
            let rhs = y * k.a_closed_form(y).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }

        #[test]
        fn kernel_symmetry_on_line(t in -20.0f64..20.0) {
            for k in [KernelSpec::gauss(), KernelSpec::gauss2()] {
                let a = k.eval_k(c(0.5, t)).unwrap();
                let b = k.eval_k(c(0.5, -t)).unwrap();
                prop_assert_eq!(a, b);
                prop_assert!(a.im.abs() < 1e-300 || a.im.abs() < 1e-15 * a.re.abs());
            }
        }
    }
}
