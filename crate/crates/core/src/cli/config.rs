//! Run configuration: defaults, a flat `key = value` file, and command-line
//! overrides, applied in that order.

use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::density::TestFunction;
use crate::error::{Error, Result};
use crate::kernel::KernelSpec;
use crate::numth::check_residue_class;

/// Everything a command needs; embedded verbatim in every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(rename = "X")]
    pub big_x: u64,
    pub v: u64,
    pub kernel: String,
    /// Comma-separated test functions, e.g. `fejer:0.9,gaussian:1`.
    pub tf: String,
    pub lambda: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub cache_dir: PathBuf,
    pub out_dir: PathBuf,
    /// Worker threads; 0 uses every core.
    pub threads: usize,
    /// `start:stop:step` or a comma-separated list.
    pub alpha_grid: String,
    /// Optional comma-separated subset of primes for `zeros`.
    pub primes: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            big_x: 10_000,
            v: 1,
            kernel: "gauss".into(),
            tf: "fejer:0.5,fejer:0.9,bump:0.9,gaussian:1".into(),
            lambda: 0.9,
            t: crate::zeros::DEFAULT_T,
            cache_dir: PathBuf::from("zero-cache"),
            out_dir: PathBuf::from("out"),
            threads: 0,
            alpha_grid: "0:2:0.05".into(),
            primes: String::new(),
        }
    }
}

/// Values that may come from the file or the command line; `None` leaves
/// the lower-precedence value in place.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub big_x: Option<u64>,
    pub v: Option<u64>,
    pub kernel: Option<String>,
    pub tf: Option<String>,
    pub lambda: Option<f64>,
    pub t: Option<f64>,
    pub cache_dir: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub threads: Option<usize>,
    pub alpha_grid: Option<String>,
    pub primes: Option<String>,
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::InvalidArgument(format!("bad value {value:?} for {key}")))
}

impl Overrides {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut o = Overrides::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("config line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "X" => o.big_x = Some(parse(key, value)?),
                "v" => o.v = Some(parse(key, value)?),
                "kernel" => o.kernel = Some(value.into()),
                "tf" => o.tf = Some(value.into()),
                "lambda" => o.lambda = Some(parse(key, value)?),
                "T" => o.t = Some(parse(key, value)?),
                "cache_dir" | "cache-dir" => o.cache_dir = Some(value.into()),
                "out_dir" | "out-dir" => o.out_dir = Some(value.into()),
                "threads" => o.threads = Some(parse(key, value)?),
                "alpha_grid" | "alpha-grid" => o.alpha_grid = Some(value.into()),
                "primes" => o.primes = Some(value.into()),
                _ => return Err(Error::InvalidArgument(format!("config line {}: unknown key {key:?}", lineno + 1))),
            }
        }
        Ok(o)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("config file {}: {e}", path.display())))?;
        Self::from_text(&text)
    }
}

impl RunConfig {
    pub fn apply(&mut self, o: &Overrides) {
        macro_rules! take {
            ($($f:ident),*) => { $( if let Some(v) = &o.$f { self.$f = v.clone(); } )* };
        }
        take!(big_x, v, kernel, tf, lambda, t, cache_dir, out_dir, threads, alpha_grid, primes);
    }

    /// Defaults, then the file, then the command line.
    pub fn resolve(file: Option<&Path>, cli: &Overrides) -> Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            cfg.apply(&Overrides::from_file(path)?);
        }
        cfg.apply(cli);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        check_residue_class(self.v)?;
        if self.big_x < 2 {
            return Err(Error::InvalidArgument(format!("X must be >= 2, got {}", self.big_x)));
        }
        if !(self.t > 0.0 && self.t <= crate::lfunc::T_MAX) {
            return Err(Error::InvalidArgument(format!("T must lie in (0, {}], got {}", crate::lfunc::T_MAX, self.t)));
        }
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return Err(Error::InvalidArgument(format!("lambda must lie in (0, 1), got {}", self.lambda)));
        }
        self.kernel_spec()?;
        self.test_functions()?;
        self.alphas()?;
        self.prime_subset()?;
        Ok(())
    }

    pub fn kernel_spec(&self) -> Result<KernelSpec> {
        KernelSpec::from_name(&self.kernel).map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    pub fn test_functions(&self) -> Result<Vec<TestFunction>> {
        let tfs: Vec<TestFunction> =
            self.tf.split(',').map(str::trim).filter(|s| !s.is_empty()).map(TestFunction::from_name).collect::<Result<_>>()?;
        if tfs.is_empty() {
            return Err(Error::InvalidArgument("no test function given".into()));
        }
        Ok(tfs)
    }

    pub fn alphas(&self) -> Result<Vec<f64>> {
        let bad = || Error::InvalidArgument(format!("bad alpha grid {:?}", self.alpha_grid));
        let parts: Vec<&str> = self.alpha_grid.split(':').collect();
        let alphas: Vec<f64> = if parts.len() == 3 {
            let v: Vec<f64> = parts.iter().map(|s| s.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
            let (start, stop, step) = (v[0], v[1], v[2]);
            if !(step > 0.0) || stop < start {
                return Err(bad());
            }
            let n = ((stop - start) / step + 1e-9).floor() as usize;
            // rounded so that `0:2:0.05` yields 0.15, not 0.15000000000000002
            (0..=n).map(|k| ((start + k as f64 * step) * 1e12).round() / 1e12).collect()
        } else {
            self.alpha_grid.split(',').map(|s| s.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?
        };
        if alphas.is_empty() || alphas.len() > 100_000 || alphas.iter().any(|a| !a.is_finite()) {
            return Err(bad());
        }
        Ok(alphas)
    }

    /// The `primes` subset, if any; each must be a prime in class `v`.
    pub fn prime_subset(&self) -> Result<Option<Vec<u64>>> {
        if self.primes.trim().is_empty() {
            return Ok(None);
        }
        let ps: Vec<u64> = self.primes.split(',').map(|s| parse("primes", s.trim())).collect::<Result<_>>()?;
        for &p in &ps {
            if !crate::numth::is_prime(p) || p % 4 != self.v {
                return Err(Error::InvalidArgument(format!("{p} is not a prime ≡ {} (mod 4)", self.v)));
            }
        }
        Ok(Some(ps))
    }

    /// Canonical `key=value` lines, sorted by key.
    pub fn canonical(&self) -> String {
        let value = serde_json::to_value(self).expect("config serializes");
        let mut out = String::new();
        if let serde_json::Value::Object(map) = value {
            for (k, v) in map {
                let v = match v {
                    serde_json::Value::String(s) => s,
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}={v}\n"));
            }
        }
        out
    }

    /// SHA-256 of [`RunConfig::canonical`], hex encoded.
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}
