//! One function per subcommand.
//!
//! Every command computes a plain data struct first and then writes it; the
//! `report` command reuses the same structs, so its numbers match the CSVs
//! exactly.

use std::f64::consts::PI;
use std::path::PathBuf;

use num_complex::Complex64;
use serde::Serialize;

use super::config::RunConfig;
use super::output::{write_csv, write_json, Cell, LinePlot, Series};
use crate::density::{
    density_report, explicit_formula_sides, form_factor_grid, one_level_density_empirical, Family, TestFunction, DENSITY_NORM,
    FORM_FACTOR_NORM,
};
use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::lfunc::QuadChar;
use crate::nonvanish::{fejer_bound, survey_central_values, LAMBDA_GRID};
use crate::numth::sieve_primes;
use crate::ratios::{
    density_integrand, kernel_weighted_density_prediction, log_deriv_empirical, log_deriv_prediction, ratios_empirical,
    ratios_main_terms_unchecked, scaled_density_prediction, Branch, RatiosFamily, RatiosParams,
};
use crate::zeros::{ensure_zeros, load_family, ZeroCache, CACHE_MAGIC, CACHE_VERSION};

/// Version of the report JSON layout; bump on any incompatible change.
pub const SCHEMA_VERSION: u32 = 1;
/// `x` values of the explicit-formula table.
pub const EXPLICIT_XS: [f64; 4] = [4.0, 16.0, 64.0, 256.0];
/// Shift used for the log-derivative row of `ratios.csv`.
pub const LOG_DERIV_SHIFT: f64 = 0.15;
/// Finite-difference step for the log-derivative.
pub const LOG_DERIV_STEP: f64 = 1e-4;
/// Shifts `(α, β)` of the ratio row of `ratios.csv`.
pub const RATIO_SHIFTS: (f64, f64) = (0.1, 0.2);
/// Test function of the scaled-density rows.
pub const SCALED_TEST_FUNCTION: &str = "gaussian:1";
/// Suffix for statistics evaluated outside the conjecture's stated range.
pub const OUT_OF_RANGE: &str = "[out-of-range]";

/// Files written and per-prime failures of one command.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub files: Vec<PathBuf>,
    pub failures: Vec<(u64, String)>,
}

/// Stage messages on stderr, from the orchestrating thread only.
#[derive(Debug, Clone, Copy)]
pub struct Progress {
    pub quiet: bool,
}

impl Progress {
    pub fn say(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("lowlying: {}", msg.as_ref());
        }
    }
}

fn load_family_for(cfg: &RunConfig, progress: Progress) -> Result<Family> {
    let cache = ZeroCache::new(&cfg.cache_dir)?;
    progress.say(format!("loading zeros for X = {}, v = {} from {}", cfg.big_x, cfg.v, cfg.cache_dir.display()));
    Family::load(cfg.big_x, cfg.v, cfg.t, &cache)
}

pub fn cmd_sieve(cfg: &RunConfig, progress: Progress) -> Result<Outcome> {
    let set = sieve_primes(cfg.big_x, cfg.v)?;
    progress.say(format!("{} primes p <= {} with p ≡ {} (mod 4)", set.count(), cfg.big_x, cfg.v));
    let rows: Vec<Vec<Cell>> = set.primes.iter().map(|&p| vec![Cell::from(p)]).collect();
    let path = write_csv(&cfg.out_dir, "primes.csv", &["p"], &rows)?;
    Ok(Outcome { files: vec![path], failures: vec![] })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZerosSummary {
    #[serde(rename = "X")]
    pub big_x: u64,
    pub v: u64,
    #[serde(rename = "T")]
    pub t: f64,
    pub primes: usize,
    pub cache_hits: usize,
    pub computed: usize,
    pub failed: usize,
    pub total_zeros: usize,
    pub central_flags: usize,
    pub cache_version: u32,
}

/// Fills the cache for the family (or the `primes` subset).
pub fn cmd_zeros(cfg: &RunConfig, progress: Progress) -> Result<Outcome> {
    let primes = match cfg.prime_subset()? {
        Some(ps) => ps,
        None => sieve_primes(cfg.big_x, cfg.v)?.primes,
    };
    let cache = ZeroCache::new(&cfg.cache_dir)?;
    progress.say(format!("isolating zeros up to T = {} for {} primes", cfg.t, primes.len()));
    let report = ensure_zeros(&primes, cfg.t, &cache);
    progress.say(format!("{} cache hits, {} computed, {} failed", report.cache_hits, report.computed, report.failures.len()));
    let failed: Vec<u64> = report.failures.iter().map(|(p, _)| *p).collect();
    let good: Vec<u64> = primes.iter().copied().filter(|p| !failed.contains(p)).collect();
    let lists = load_family(&good, cfg.t, &cache)?;
    let summary = ZerosSummary {
        big_x: cfg.big_x,
        v: cfg.v,
        t: cfg.t,
        primes: primes.len(),
        cache_hits: report.cache_hits,
        computed: report.computed,
        failed: report.failures.len(),
        total_zeros: lists.iter().map(|z| z.len()).sum(),
        central_flags: lists.iter().filter(|z| z.central_flag).count(),
        cache_version: CACHE_VERSION,
    };
    let mut files = vec![write_json(&cfg.out_dir, "zeros_summary.json", &summary)?];
    let rows: Vec<Vec<Cell>> = report.failures.iter().map(|(p, e)| vec![Cell::from(*p), Cell::from(e.as_str())]).collect();
    files.push(write_csv(&cfg.out_dir, "zeros_failures.csv", &["p", "error"], &rows)?);
    Ok(Outcome { files, failures: report.failures })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormFactorRow {
    pub alpha: f64,
    #[serde(rename = "F")]
    pub f: f64,
    pub prediction: f64,
    /// `F - prediction`.
    pub gap: f64,
}

pub fn formfactor_rows(cfg: &RunConfig, family: &Family, kernel: &KernelSpec) -> Result<Vec<FormFactorRow>> {
    let grid = form_factor_grid(family, &cfg.alphas()?, kernel)?;
    Ok(grid
        .alphas
        .iter()
        .zip(grid.values.iter().zip(&grid.prediction))
        .map(|(&alpha, (&f, &prediction))| FormFactorRow { alpha, f, prediction, gap: f - prediction })
        .collect())
}

pub fn cmd_formfactor(cfg: &RunConfig, progress: Progress) -> Result<Outcome> {
    let family = load_family_for(cfg, progress)?;
    let kernel = cfg.kernel_spec()?;
    progress.say("evaluating the form factor");
    let rows = formfactor_rows(cfg, &family, &kernel)?;
    let csv: Vec<Vec<Cell>> =
        rows.iter().map(|r| vec![r.alpha.into(), r.f.into(), r.prediction.into(), r.gap.into()]).collect();
    let mut files = vec![write_csv(&cfg.out_dir, "formfactor.csv", &["alpha", "F", "prediction", "gap"], &csv)?];
    let in_window = |r: &&FormFactorRow| (0.0..=2.0).contains(&r.alpha);
    let plot = LinePlot {
        title: format!("Form factor, X = {}, v = {}, kernel {}", cfg.big_x, cfg.v, kernel.name()),
        x_label: "alpha".into(),
        y_label: "F(alpha, X)".into(),
        series: vec![
            Series::line("F(alpha, X)", rows.iter().filter(in_window).map(|r| (r.alpha, r.f)).collect()),
            Series::line("main terms", rows.iter().filter(in_window).map(|r| (r.alpha, r.prediction)).collect()),
        ],
    };
    files.push(plot.write(&cfg.out_dir, "formfactor.svg")?);
    Ok(Outcome { files, failures: vec![] })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityRow {
    pub test_function: String,
    #[serde(rename = "X")]
    pub big_x: u64,
    pub empirical: f64,
    pub limit: f64,
    pub ratios: f64,
    #[serde(rename = "X_star")]
    pub x_star: usize,
    /// Fourier-pairing residual, absent for unbounded Fourier support.
    pub pairing_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExplicitRow {
    pub p: u64,
    pub x: f64,
    pub lhs_re: f64,
    pub rhs_re: f64,
    pub residual: f64,
}

pub fn density_rows(cfg: &RunConfig, family: &Family, kernel: &KernelSpec) -> Result<Vec<DensityRow>> {
    cfg.test_functions()?
        .iter()
        .map(|tf| {
            let r = density_report(family, tf, kernel)?;
            Ok(DensityRow {
                test_function: r.test_function,
                big_x: r.big_x,
                empirical: r.empirical,
                limit: r.limit_value,
                ratios: r.ratios_value,
                x_star: r.x_star,
                pairing_residual: r.pairing_residual,
            })
        })
        .collect()
}

/// Smallest, median and largest prime of the family.
pub fn explicit_primes(family: &Family) -> Vec<u64> {
    let ps: Vec<u64> = family.zeros.iter().map(|z| z.p).collect();
    let mut picked: Vec<u64> = match ps.len() {
        0 => vec![],
        n => vec![ps[0], ps[n / 2], ps[n - 1]],
    };
    picked.dedup();
    picked
}

pub fn explicit_rows(family: &Family, kernel: &KernelSpec) -> Result<Vec<ExplicitRow>> {
    let mut rows = Vec::new();
    for p in explicit_primes(family) {
        let zl = family.zeros.iter().find(|z| z.p == p).expect("picked from the family");
        let chi = QuadChar::new(p)?;
        for &x in &EXPLICIT_XS {
            let s = explicit_formula_sides(&chi, zl, x, kernel)?;
            rows.push(ExplicitRow { p, x, lhs_re: s.lhs.re, rhs_re: s.rhs.re, residual: s.residual });
        }
    }
    Ok(rows)
}

pub fn cmd_density(cfg: &RunConfig, progress: Progress) -> Result<Outcome> {
    let family = load_family_for(cfg, progress)?;
    let kernel = cfg.kernel_spec()?;
    progress.say("evaluating one-level densities");
    let rows = density_rows(cfg, &family, &kernel)?;
    let csv: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| vec![r.big_x.into(), r.empirical.into(), r.limit.into(), r.ratios.into(), r.x_star.into()])
        .collect();
    let mut files = vec![write_csv(&cfg.out_dir, "density.csv", &["X", "empirical", "limit", "ratios", "X_star"], &csv)?];
    progress.say("checking the explicit formula");
    let explicit = explicit_rows(&family, &kernel)?;
    let csv: Vec<Vec<Cell>> =
        explicit.iter().map(|r| vec![r.p.into(), r.x.into(), r.lhs_re.into(), r.rhs_re.into(), r.residual.into()]).collect();
    files.push(write_csv(&cfg.out_dir, "explicit.csv", &["p", "x", "lhs_re", "rhs_re", "residual"], &csv)?);

    let idx = |f: fn(&DensityRow) -> f64| rows.iter().enumerate().map(|(i, r)| ((i + 1) as f64, f(r))).collect::<Vec<_>>();
    let names: Vec<&str> = rows.iter().map(|r| r.test_function.as_str()).collect();
    let plot = LinePlot {
        title: format!("One-level density, X = {}, v = {}", cfg.big_x, cfg.v),
        x_label: format!("test function: {}", names.join(", ")),
        y_label: "normalized density".into(),
        series: vec![
            Series::markers("empirical", idx(|r| r.empirical)),
            Series::markers("ratios", idx(|r| r.ratios)),
            Series::markers("limit", idx(|r| r.limit)),
        ],
    };
    files.push(plot.write(&cfg.out_dir, "density.svg")?);
    let mut series: Vec<Series> = explicit_primes(&family)
        .iter()
        .map(|&p| {
            let pts = explicit.iter().filter(|r| r.p == p).map(|r| (r.x.log2(), r.residual.max(1e-300).log10())).collect();
            Series::line(&format!("p = {p}"), pts)
        })
        .collect();
    series.push(Series::line("x^(-1/2)", EXPLICIT_XS.iter().map(|&x| (x.log2(), -0.5 * x.log10())).collect()));
    let plot = LinePlot {
        title: "Explicit formula residual".into(),
        x_label: "log2 x".into(),
        y_label: "log10 |lhs - rhs|".into(),
        series,
    };
    files.push(plot.write(&cfg.out_dir, "explicit.svg")?);
    Ok(Outcome { files, failures: vec![] })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatiosRow {
    #[serde(rename = "X")]
    pub big_x: u64,
    pub v: u64,
    pub statistic: String,
    pub empirical: f64,
    pub prediction: f64,
    /// `empirical - prediction`.
    pub gap: f64,
}

fn ratios_row(cfg: &RunConfig, statistic: String, empirical: f64, prediction: f64) -> RatiosRow {
    RatiosRow { big_x: cfg.big_x, v: cfg.v, statistic, empirical, prediction, gap: empirical - prediction }
}

/// `(X*)^{-1} Σ_p Σ_γ g(γ log X / 2π)` over all zeros, both signs, central
/// zeros with multiplicity 2.
pub fn scaled_density_empirical(family: &Family, g: &TestFunction) -> f64 {
    let scale = family.log_x() / (2.0 * PI);
    let mut total = 0.0;
    for z in &family.zeros {
        total += z.gammas.iter().map(|&gm| 2.0 * g.r(gm * scale)).sum::<f64>();
        if z.central_flag {
            total += 2.0 * g.r(0.0);
        }
    }
    total / family.x_star() as f64
}

pub fn ratios_rows(cfg: &RunConfig, family: &Family, kernel: &KernelSpec, progress: Progress) -> Result<Vec<RatiosRow>> {
    let (x, v) = (cfg.big_x, cfg.v);
    let mut rows = Vec::new();

    progress.say("log-derivative average");
    let pred = log_deriv_prediction(Complex64::new(LOG_DERIV_SHIFT, 0.0), x, v)?;
    let emp = log_deriv_empirical(LOG_DERIV_SHIFT, x, v, LOG_DERIV_STEP)?;
    let mark = if pred.in_range { "" } else { OUT_OF_RANGE };
    rows.push(ratios_row(cfg, format!("log_deriv(r={LOG_DERIV_SHIFT}){mark}"), emp, pred.value.re));

    progress.say("ratio average");
    let (a, b) = RATIO_SHIFTS;
    let params = RatiosParams { alpha: Complex64::new(a, 0.0), beta: Complex64::new(b, 0.0), big_x: x, v };
    let mark = if params.validate().is_ok() { "" } else { OUT_OF_RANGE };
    let emp = ratios_empirical(&params)?;
    let pred = ratios_main_terms_unchecked(&params)?;
    rows.push(ratios_row(cfg, format!("ratio(alpha={a};beta={b}){mark}"), emp.re, pred.re));

    progress.say("kernel-weighted densities");
    for tf in cfg.test_functions()? {
        let emp = one_level_density_empirical(family, &tf, kernel)?.density_normalized;
        let pred = kernel_weighted_density_prediction(&tf, kernel, x, v)?;
        rows.push(ratios_row(cfg, format!("density_K({})", tf.name), emp, pred));
    }

    progress.say("scaled density");
    let g = TestFunction::from_name(SCALED_TEST_FUNCTION)?;
    let scaled = scaled_density_prediction(&g, x, v)?;
    let emp = scaled_density_empirical(family, &g);
    rows.push(ratios_row(cfg, format!("scaled_density({})", g.name), emp, scaled.value));
    rows.push(ratios_row(cfg, format!("scaled_density_limit({})", g.name), emp, scaled.limit));
    Ok(rows)
}

/// The predicted zero density in units of mean spacing, `τ ∈ [0, 3]`.
pub fn ratios_density_curve(big_x: u64, v: u64) -> Result<Vec<(f64, f64)>> {
    let fam = RatiosFamily::new(big_x, v)?;
    let lx = (big_x as f64).ln();
    (0..=120)
        .map(|k| {
            let tau = k as f64 * 0.025;
            let w = density_integrand(&fam, 2.0 * PI * tau / lx, Branch::Auto)?;
            Ok((tau, w / (lx * fam.x_star())))
        })
        .collect()
}

pub fn cmd_ratios(cfg: &RunConfig, progress: Progress) -> Result<Outcome> {
    let family = load_family_for(cfg, progress)?;
    let kernel = cfg.kernel_spec()?;
    let rows = ratios_rows(cfg, &family, &kernel, progress)?;
    let csv: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| vec![r.big_x.into(), r.v.into(), r.statistic.clone().into(), r.empirical.into(), r.prediction.into(), r.gap.into()])
        .collect();
    let mut files =
        vec![write_csv(&cfg.out_dir, "ratios.csv", &["X", "v", "statistic", "empirical", "prediction", "gap"], &csv)?];
    let curve = ratios_density_curve(cfg.big_x, cfg.v)?;
    let limit: Vec<(f64, f64)> = curve
        .iter()
        .map(|&(tau, _)| {
            let z = 2.0 * PI * tau;
            (tau, if z == 0.0 { 0.0 } else { 1.0 - z.sin() / z })
        })
        .collect();
    let plot = LinePlot {
        title: format!("Predicted zero density, X = {}, v = {}", cfg.big_x, cfg.v),
        x_label: "tau = t log X / 2 pi".into(),
        y_label: "density".into(),
        series: vec![Series::line("ratios prediction", curve), Series::line("1 - sin(2 pi tau)/(2 pi tau)", limit)],
    };
    files.push(plot.write(&cfg.out_dir, "ratios.svg")?);
    Ok(Outcome { files, failures: vec![] })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundRow {
    pub lambda: f64,
    pub lhs_fourier: f64,
    pub lhs_zero_sum: f64,
    pub bound: f64,
    pub slack: f64,
    pub agreement: f64,
    pub vanishing_proportion_bound: f64,
    pub central_mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NonvanishSummary {
    #[serde(rename = "X")]
    pub big_x: u64,
    pub v: u64,
    pub primes: usize,
    pub proportion_nonzero: f64,
    pub undetermined: usize,
    pub failed: usize,
    pub bounds: Vec<BoundRow>,
}

/// The fixed λ grid plus the configured λ.
pub fn lambda_grid(cfg: &RunConfig) -> Vec<f64> {
    let mut grid = LAMBDA_GRID.to_vec();
    if !grid.contains(&cfg.lambda) {
        grid.push(cfg.lambda);
        grid.sort_by(f64::total_cmp);
    }
    grid
}

pub fn nonvanish_data(
    cfg: &RunConfig,
    family: &Family,
    kernel: &KernelSpec,
    progress: Progress,
) -> Result<(NonvanishSummary, crate::nonvanish::Survey)> {
    progress.say("central values");
    let survey = survey_central_values(cfg.big_x, cfg.v)?;
    progress.say("Fejér bounds");
    let bounds = lambda_grid(cfg)
        .into_iter()
        .map(|lambda| {
            let b = fejer_bound(lambda, family, kernel)?;
            Ok(BoundRow {
                lambda,
                lhs_fourier: b.lhs_fourier,
                lhs_zero_sum: b.lhs_zero_sum,
                bound: b.bound,
                slack: b.slack,
                agreement: b.agreement(),
                vanishing_proportion_bound: b.vanishing_proportion_bound(),
                central_mass: b.central_mass,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summary = NonvanishSummary {
        big_x: cfg.big_x,
        v: cfg.v,
        primes: survey.records.len() + survey.failures.len(),
        proportion_nonzero: survey.proportion_nonzero(),
        undetermined: survey.undetermined(),
        failed: survey.failures.len(),
        bounds,
    };
    Ok((summary, survey))
}

pub fn cmd_nonvanish(cfg: &RunConfig, progress: Progress) -> Result<Outcome> {
    let family = load_family_for(cfg, progress)?;
    let kernel = cfg.kernel_spec()?;
    let (summary, survey) = nonvanish_data(cfg, &family, &kernel, progress)?;
    let csv: Vec<Vec<Cell>> =
        survey.records.iter().map(|r| vec![r.p.into(), r.central_value.into(), r.status.as_str().into()]).collect();
    let mut files = vec![write_csv(&cfg.out_dir, "nonvanish.csv", &["p", "central_value", "status"], &csv)?];
    files.push(write_json(&cfg.out_dir, "nonvanish_summary.json", &summary)?);
    let pts = |f: fn(&BoundRow) -> f64| summary.bounds.iter().map(|b| (b.lambda, f(b))).collect::<Vec<_>>();
    let plot = LinePlot {
        title: format!("Fejér bound, X = {}, v = {}", cfg.big_x, cfg.v),
        x_label: "lambda".into(),
        y_label: "value".into(),
        series: vec![Series::line("zero-sum side", pts(|b| b.lhs_zero_sum)), Series::line("-1 + 2/lambda", pts(|b| b.bound))],
    };
    files.push(plot.write(&cfg.out_dir, "nonvanish.svg")?);
    Ok(Outcome { files, failures: survey.failures })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CacheInfo {
    pub format: &'static str,
    pub version: u32,
    #[serde(rename = "T")]
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyInfo {
    #[serde(rename = "X")]
    pub big_x: u64,
    pub v: u64,
    #[serde(rename = "X_star")]
    pub x_star: usize,
    pub li_x: f64,
    pub total_zeros: usize,
    pub central_flags: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Normalizations {
    pub form_factor: f64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormFactorSection {
    pub normalization: &'static str,
    pub rows: Vec<FormFactorRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensitySection {
    pub normalization: &'static str,
    pub rows: Vec<DensityRow>,
    pub explicit: Vec<ExplicitRow>,
}

/// Everything in one document.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub config: RunConfig,
    pub config_hash: String,
    pub cache: CacheInfo,
    pub family: FamilyInfo,
    pub normalizations: Normalizations,
    pub formfactor: FormFactorSection,
    pub density: DensitySection,
    pub ratios: Vec<RatiosRow>,
    pub nonvanish: NonvanishSummary,
}

pub fn build_report(cfg: &RunConfig, progress: Progress) -> Result<Report> {
    let family = load_family_for(cfg, progress)?;
    let kernel = cfg.kernel_spec()?;
    progress.say("form factor");
    let ff = formfactor_rows(cfg, &family, &kernel)?;
    progress.say("densities and explicit formula");
    let dens = density_rows(cfg, &family, &kernel)?;
    let explicit = explicit_rows(&family, &kernel)?;
    let ratios = ratios_rows(cfg, &family, &kernel, progress)?;
    let (nonvanish, survey) = nonvanish_data(cfg, &family, &kernel, progress)?;
    if let Some((p, e)) = survey.failures.first() {
        return Err(Error::Domain(format!("central value at p = {p} failed: {e}")));
    }
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool: ToolInfo { name: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION") },
        config: cfg.clone(),
        config_hash: cfg.hash(),
        cache: CacheInfo { format: std::str::from_utf8(CACHE_MAGIC).expect("ascii magic"), version: CACHE_VERSION, t: cfg.t },
        family: FamilyInfo {
            big_x: family.big_x,
            v: family.v,
            x_star: family.x_star(),
            li_x: family.li_x,
            total_zeros: family.zeros.iter().map(|z| z.len()).sum(),
            central_flags: family.zeros.iter().filter(|z| z.central_flag).count(),
        },
        normalizations: Normalizations { form_factor: FORM_FACTOR_NORM, density: DENSITY_NORM },
        formfactor: FormFactorSection { normalization: "form_factor", rows: ff },
        density: DensitySection { normalization: "density", rows: dens, explicit },
        ratios,
        nonvanish,
    })
}

pub fn cmd_report(cfg: &RunConfig, progress: Progress) -> Result<Outcome> {
    let report = build_report(cfg, progress)?;
    let path = write_json(&cfg.out_dir, "report.json", &report)?;
    Ok(Outcome { files: vec![path], failures: vec![] })
}
