//! Even test functions `r` with their Fourier transforms
//! `r̂(α) = ∫ r(u) e^{-2πiαu} du`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quad::{composite_rule, integrate_with_breaks, QuadOptions};

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    /// `r(u) = (sin πλu / πλu)²`, `r̂(α) = λ^{-2} max(λ - |α|, 0)`.
    Fejer { lambda: f64 },
    /// `r(u) = e^{-π(u/w)²}`, `r̂(α) = w e^{-π(wα)²}`.
    Gaussian { width: f64 },
    /// Raised cosine `r̂(α) = (1 + cos(πα/λ)) / 2λ` on `|α| < λ`.
    Bump { lambda: f64 },
    /// Piecewise-linear `r̂` through `values[k]` at `α = k·step`.
    Sampled { step: f64, values: Arc<[f64]> },
}

/// An even test function with its Fourier transform.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    pub name: String,
    shape: Shape,
    /// `r̂(α) = 0` for `|α| >= support_bound` (infinite for the Gaussian).
    pub support_bound: f64,
    /// Both `r` and `r̂` are known in closed form.
    pub closed_forms: bool,
}

fn sinc_pi(z: f64) -> f64 {
    if z.abs() < 1e-4 {
        let x = PI * z;
        1.0 - x * x / 6.0 + x.powi(4) / 120.0
    } else {
        (PI * z).sin() / (PI * z)
    }
}

fn positive(name: &str, x: f64) -> Result<f64> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidArgument(format!("{name} must be positive and finite, got {x}")))
    }
}

impl TestFunction {
    pub fn fejer(lambda: f64) -> Result<Self> {
        let lambda = positive("Fejér λ", lambda)?;
        Ok(TestFunction { name: format!("fejer({lambda})"), shape: Shape::Fejer { lambda }, support_bound: lambda, closed_forms: true })
    }

    pub fn gaussian(width: f64) -> Result<Self> {
        let width = positive("Gaussian width", width)?;
        Ok(TestFunction {
            name: format!("gaussian({width})"),
            shape: Shape::Gaussian { width },
            support_bound: f64::INFINITY,
            closed_forms: true,
        })
    }

    pub fn bump(lambda: f64) -> Result<Self> {
        let lambda = positive("bump λ", lambda)?;
        Ok(TestFunction { name: format!("bump({lambda})"), shape: Shape::Bump { lambda }, support_bound: lambda, closed_forms: true })
    }

    /// User test function given by samples of `r̂` on `α = 0, step, 2 step, …`;
    /// the last sample must be zero and marks the support bound.
    pub fn sampled(name: &str, step: f64, values: Vec<f64>) -> Result<Self> {
        let step = positive("sample step", step)?;
        if values.len() < 2 || *values.last().unwrap() != 0.0 || values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("sampled r̂ needs ≥ 2 finite samples ending in 0".into()));
        }
        let support_bound = step * (values.len() - 1) as f64;
        Ok(TestFunction {
            name: name.to_string(),
            shape: Shape::Sampled { step, values: values.into() },
            support_bound,
            closed_forms: false,
        })
    }

    /// Parses `fejer:0.9`, `gaussian:1`, `bump:0.5` (parameter optional).
    pub fn from_name(spec: &str) -> Result<Self> {
        let (kind, param) = match spec.split_once(':') {
            Some((k, p)) => {
                let v = p.parse::<f64>().map_err(|_| Error::InvalidArgument(format!("bad test-function parameter in {spec:?}")))?;
                (k, Some(v))
            }
            None => (spec, None),
        };
        match kind {
            "fejer" => Self::fejer(param.unwrap_or(0.9)),
            "gaussian" => Self::gaussian(param.unwrap_or(1.0)),
            "bump" => Self::bump(param.unwrap_or(0.9)),
            _ => Err(Error::InvalidArgument(format!("unknown test function {kind:?} (fejer, gaussian, bump)"))),
        }
    }

    /// Non-smooth points of `r̂` on `α >= 0`, used as quadrature breaks.
    pub fn kinks(&self) -> Vec<f64> {
        match &self.shape {
            Shape::Fejer { lambda } | Shape::Bump { lambda } => vec![0.0, *lambda],
            Shape::Gaussian { .. } => vec![0.0],
            Shape::Sampled { step, values } => (0..values.len()).map(|k| k as f64 * step).collect(),
        }
    }

    pub fn r(&self, u: f64) -> f64 {
        match &self.shape {
            Shape::Fejer { lambda } => sinc_pi(lambda * u).powi(2),
            Shape::Gaussian { width } => (-PI * (u / width).powi(2)).exp(),
            Shape::Bump { lambda } => {
                let z = 2.0 * lambda * u;
                if (z.abs() - 1.0).abs() < 1e-6 {
                    // removable singularity at |z| = 1: expand around it
                    let e = z.abs() - 1.0;
                    0.5 - 0.75 * e
                } else {
                    sinc_pi(z) / (1.0 - z * z)
                }
            }
            Shape::Sampled { .. } => self.r_numeric(u),
        }
    }

    pub fn r_hat(&self, alpha: f64) -> f64 {
        let a = alpha.abs();
        match &self.shape {
            Shape::Fejer { lambda } => (lambda - a).max(0.0) / (lambda * lambda),
            Shape::Gaussian { width } => width * (-PI * (width * a).powi(2)).exp(),
            Shape::Bump { lambda } => {
                if a >= *lambda {
                    0.0
                } else {
                    (1.0 + (PI * a / lambda).cos()) / (2.0 * lambda)
                }
            }
            Shape::Sampled { step, values } => {
                let x = a / step;
                let k = x.floor() as usize;
                if k + 1 >= values.len() {
                    return 0.0;
                }
                let f = x - k as f64;
                values[k] * (1.0 - f) + values[k + 1] * f
            }
        }
    }

    /// Interval `[0, A]` outside which `r̂` is negligible.
    pub fn effective_support(&self) -> f64 {
        match &self.shape {
            // w e^{-π(wα)²} < 1e-18
            Shape::Gaussian { width } => (18.0 * 10f64.ln() / PI).sqrt() / width,
            _ => self.support_bound,
        }
    }

    /// `r(u) = 2 ∫_0^A r̂(α) cos(2παu) dα` by quadrature.
    pub fn r_numeric(&self, u: f64) -> f64 {
        let a = self.effective_support();
        let opts = QuadOptions { abs_tol: 1e-14, rel_tol: 1e-13, max_intervals: 2000 };
        let v = integrate_with_breaks(|x: f64| self.r_hat(x) * (2.0 * PI * x * u).cos(), 0.0, a, &self.kinks(), opts)
            .map(|r| r.value)
            .unwrap_or(f64::NAN);
        2.0 * v
    }

    /// `r̂(α) = 2 ∫_0^U r(u) cos(2παu) du` by quadrature truncated at
    /// `cutoff`; the neglected tail is `O(1/(α U²))` for Fejér-type decay.
    pub fn r_hat_numeric(&self, alpha: f64, cutoff: f64) -> f64 {
        let panels = (2.0 * cutoff).ceil() as usize;
        let (x, w) = composite_rule(0.0, cutoff, panels, 24);
        2.0 * x.iter().zip(&w).map(|(&u, &wt)| wt * self.r(u) * (2.0 * PI * alpha * u).cos()).sum::<f64>()
    }

    /// `∫_{-1}^{1} r̂(α) dα`, the Fourier-side weight of the sine kernel.
    pub fn r_hat_mass_within_one(&self) -> Result<f64> {
        let hi = self.effective_support().min(1.0);
        let mut breaks = self.kinks();
        breaks.push(1.0);
        Ok(2.0 * integrate_with_breaks(|x: f64| self.r_hat(x), 0.0, hi, &breaks, QuadOptions::tol(1e-15, 1e-14))?.value)
    }
}

/// `2 ∫_0^∞ g(u) du` for an even `g` decaying at least like `u^{-2}`:
/// fixed-order panels up to `A` and `2A`, then Richardson extrapolation on
/// the `1/A` tail.
pub(crate) fn even_line_integral<G: Fn(f64) -> f64>(g: G, base: f64) -> f64 {
    let half = |hi: f64, lo: f64| {
        let panels = (2.0 * (hi - lo)).ceil() as usize;
        let (x, w) = composite_rule(lo, hi, panels, 24);
        x.iter().zip(&w).map(|(&u, &wt)| wt * g(u)).sum::<f64>()
    };
    let i_a = half(base, 0.0);
    let i_2a = i_a + half(2.0 * base, base);
    2.0 * (2.0 * i_2a - i_a)
}
