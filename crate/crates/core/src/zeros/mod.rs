//! Critical-line zeros `ρ = ½ + iγ` of `L(s, χ_p)` with `0 < γ <= T`.
//!
//! [`find_zeros`] brackets sign changes of Hardy's `Z` on a grid, refines
//! each by Brent's method, and certifies the list against
//! [`count_zeros`], an argument-principle count over the rectangle
//! `[-½, 3/2] × [δ, T]`. Only the right half of the contour is integrated:
//! `Λ(1 - s̄) = conj Λ(s)` makes the left half contribute the same change
//! of argument.

mod cache;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lfunc::{evaluator_for, CompletedEvaluator, QuadChar};
use crate::quad::{integrate, QuadOptions};

pub use cache::{decode, encode, ZeroCache, CACHE_MAGIC, CACHE_VERSION, HEADER_LEN};

/// Lower edge of the counting rectangle and of the search grid.
pub const DELTA: f64 = 1e-3;
/// Default height for density work: `K(½+iγ) = e^{-γ²}` is below `e^{-64}`
/// beyond it.
pub const DEFAULT_T: f64 = 8.0;
/// Grid points per mean zero spacing.
pub const SAMPLES_PER_SPACING: f64 = 8.0;
/// Bracket width at which Brent refinement stops.
pub const REFINE_TOL: f64 = 1e-12;
/// `|Z|` below which a local minimum without sign change is a double zero.
pub const EVEN_ORDER_TOL: f64 = 1e-8;
/// Largest accepted distance of the winding number from an integer.
pub const WINDING_TOL: f64 = 0.2;

/// Ordinates of zeros on the critical line, `0 < γ <= t_max`, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroList {
    pub p: u64,
    pub t_max: f64,
    pub gammas: Vec<f64>,
    /// `|L(½)| < tol_zero(p)`.
    pub central_flag: bool,
    /// The list length equals the argument-principle count.
    pub certified: bool,
}

impl ZeroList {
    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    /// The list restricted to `γ <= t`.
    pub fn truncated(&self, t: f64) -> ZeroList {
        ZeroList {
            p: self.p,
            t_max: t.min(self.t_max),
            gammas: self.gammas.iter().copied().filter(|&g| g <= t).collect(),
            central_flag: self.central_flag,
            certified: self.certified,
        }
    }
}

fn check_height(t: f64) -> Result<()> {
    if !(t > 0.0 && t <= crate::lfunc::T_MAX) {
        return Err(Error::Domain(format!("zero search height {t} outside (0, {}]", crate::lfunc::T_MAX)));
    }
    Ok(())
}

/// Mean spacing of zeros at height `t` for conductor `p`.
pub fn mean_spacing(p: u64, t: f64) -> f64 {
    2.0 * PI / (p as f64 * t / (2.0 * PI)).ln().max(1.0)
}

/// Main term of the zero count on `0 < γ <= T`:
/// `(T/2π) log(p T / (2π e))`.
pub fn smooth_count(chi: &QuadChar, t: f64) -> f64 {
    let x = chi.p as f64 * t / (2.0 * PI * std::f64::consts::E);
    t / (2.0 * PI) * x.ln()
}

/// Number of zeros with `δ < γ <= T` by the argument principle.
pub fn count_zeros(chi: &QuadChar, t: f64) -> Result<u64> {
    check_height(t)?;
    if t <= DELTA {
        return Ok(0);
    }
    let ev = evaluator_for(chi, t)?;
    Ok(winding_count(ev.as_ref(), t)?.0)
}

/// `(count, distance of the raw winding number from the integer)`.
pub fn winding_count(ev: &dyn CompletedEvaluator, t: f64) -> Result<(u64, f64)> {
    let opts = QuadOptions { abs_tol: 1e-7, rel_tol: 1e-9, max_intervals: 4000 };
    let log_deriv = |s: Complex64| -> Complex64 {
        match ev.lambda_and_deriv(s) {
            Ok((v, d)) => d / v,
            Err(_) => Complex64::new(f64::NAN, f64::NAN),
        }
    };
    let bottom = integrate(|x: f64| log_deriv(Complex64::new(x, DELTA)), 0.5, 1.5, opts)?;
    let side = integrate(|y: f64| log_deriv(Complex64::new(1.5, y)) * Complex64::i(), DELTA, t, opts)?;
    let top = integrate(|x: f64| log_deriv(Complex64::new(x, t)), 1.5, 0.5, opts)?;
    let raw = (bottom.value + side.value + top.value).im / PI;
    if !raw.is_finite() {
        return Err(Error::WindingNumberNonIntegral { value: raw, residual: f64::NAN });
    }
    let rounded = raw.round();
    let residual = (raw - rounded).abs();
    if residual > WINDING_TOL || rounded < 0.0 {
        return Err(Error::WindingNumberNonIntegral { value: raw, residual });
    }
    Ok((rounded as u64, residual))
}

fn brent<F: FnMut(f64) -> Result<f64>>(mut f: F, mut a: f64, mut b: f64, mut fa: f64, mut fb: f64, tol: f64) -> Result<f64> {
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1 * m.signum() };
        fb = f(b)?;
    }
    Ok(b)
}

/// Minimum of `|Z|` on `[lo, hi]` by golden-section search.
fn min_abs<F: FnMut(f64) -> Result<f64>>(mut f: F, mut lo: f64, mut hi: f64) -> Result<(f64, f64)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = f(x1)?.abs();
    let mut f2 = f(x2)?.abs();
    while hi - lo > 1e-10 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1)?.abs();
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2)?.abs();
        }
    }
    Ok(if f1 < f2 { (x1, f1) } else { (x2, f2) })
}

struct Scan {
    roots: Vec<f64>,
    doubles: Vec<f64>,
}

fn scan(ev: &dyn CompletedEvaluator, t: f64, step: f64) -> Result<Scan> {
    let n = ((t - DELTA) / step).ceil().max(1.0) as usize;
    let grid: Vec<f64> = (0..=n).map(|k| DELTA + (t - DELTA) * k as f64 / n as f64).collect();
    let z: Vec<f64> = grid.iter().map(|&x| ev.hardy_z(x)).collect::<Result<_>>()?;
    let mut roots = Vec::new();
    let mut doubles = Vec::new();
    for k in 0..n {
        let (a, b) = (grid[k], grid[k + 1]);
        if z[k] == 0.0 && k > 0 {
            roots.push(a);
        } else if z[k] * z[k + 1] < 0.0 {
            roots.push(brent(|x| ev.hardy_z(x), a, b, z[k], z[k + 1], REFINE_TOL)?);
        }
        if k > 0 && z[k] != 0.0 && z[k].abs() < z[k - 1].abs() && z[k].abs() < z[k + 1].abs() && z[k - 1] * z[k + 1] > 0.0 && z[k - 1] * z[k] > 0.0 {
            let (x, v) = min_abs(|x| ev.hardy_z(x), grid[k - 1], grid[k + 1])?;
            if v < EVEN_ORDER_TOL {
                doubles.push(x);
            }
        }
    }
    if z[n] == 0.0 {
        roots.push(t);
    }
    Ok(Scan { roots, doubles })
}

/// Zeros of `L(s, χ_p)` on the critical line with `δ < γ <= T`, certified
/// against the argument-principle count. The grid is halved up to twice
/// on a mismatch; after that the list is returned with
/// `certified = false`.
pub fn find_zeros(chi: &QuadChar, t: f64) -> Result<ZeroList> {
    check_height(t)?;
    let ev = evaluator_for(chi, t)?;
    find_zeros_with(ev.as_ref(), t)
}

pub fn find_zeros_with(ev: &dyn CompletedEvaluator, t: f64) -> Result<ZeroList> {
    let chi = *ev.character();
    let central_flag = ev.hardy_z(0.0)?.abs() < chi.tol_zero();
    if t <= DELTA {
        return Ok(ZeroList { p: chi.p, t_max: t, gammas: Vec::new(), central_flag, certified: true });
    }
    let target = winding_count(ev, t)?.0 as usize;
    let base = mean_spacing(chi.p, t) / SAMPLES_PER_SPACING;
    let mut best = Vec::new();
    for halvings in 0..3 {
        let found = scan(ev, t, base / f64::powi(2.0, halvings))?;
        let mut gammas = found.roots.clone();
        let certified = if gammas.len() == target {
            true
        } else if gammas.len() + 2 * found.doubles.len() == target {
            for &d in &found.doubles {
                gammas.push(d);
                gammas.push(d);
            }
            gammas.sort_by(|a, b| a.total_cmp(b));
            true
        } else {
            false
        };
        if certified {
            return Ok(ZeroList { p: chi.p, t_max: t, gammas, central_flag, certified: true });
        }
        best = gammas;
    }
    Ok(ZeroList { p: chi.p, t_max: t, gammas: best, central_flag, certified: false })
}

/// Outcome of a bulk zero computation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BulkReport {
    pub cache_hits: usize,
    pub computed: usize,
    pub failures: Vec<(u64, String)>,
}

/// Makes sure the cache holds certified zero lists up to `t` for every
/// prime, computing the missing ones in parallel.
pub fn ensure_zeros(primes: &[u64], t: f64, cache: &ZeroCache) -> BulkReport {
    let outcomes: Vec<(u64, std::result::Result<bool, String>)> = primes
        .par_iter()
        .map(|&p| {
            let r = (|| -> Result<bool> {
                if cache.load(p, t)?.is_some() {
                    return Ok(true);
                }
                let chi = QuadChar::new(p)?;
                let zl = find_zeros(&chi, t)?;
                if !zl.certified {
                    return Err(Error::UncertifiedZeros { p });
                }
                cache.store(&zl)?;
                Ok(false)
            })();
            (p, r.map_err(|e| e.to_string()))
        })
        .collect();
    let mut report = BulkReport::default();
    for (p, r) in outcomes {
        match r {
            Ok(true) => report.cache_hits += 1,
            Ok(false) => report.computed += 1,
            Err(e) => report.failures.push((p, e)),
        }
    }
    report
}

/// Loads certified zero lists for every prime, failing with the full list
/// of primes whose cache entry is absent.
pub fn load_family(primes: &[u64], t: f64, cache: &ZeroCache) -> Result<Vec<ZeroList>> {
    let loaded: Vec<(u64, Option<ZeroList>)> =
        primes.par_iter().map(|&p| Ok((p, cache.load(p, t)?))).collect::<Result<_>>()?;
    let missing: Vec<u64> = loaded.iter().filter(|(_, z)| z.is_none()).map(|(p, _)| *p).collect();
    if !missing.is_empty() {
        return Err(Error::MissingCache { primes: missing });
    }
    Ok(loaded.into_iter().map(|(_, z)| z.expect("checked above")).collect())
}
