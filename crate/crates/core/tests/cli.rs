//! End-to-end runs of the `lowlying` binary on small families.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lowlying")).args(args).arg("-q").output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn json(dir: &Path, name: &str) -> serde_json::Value {
    serde_json::from_str(&read(dir, name)).unwrap()
}

struct Workspace {
    _tmp: TempDir,
    cache: String,
    out: String,
}

impl Workspace {
    fn new() -> Self {
        let tmp = TempDir::new().unwrap();
        let cache = tmp.path().join("cache").display().to_string();
        let out = tmp.path().join("out").display().to_string();
        Workspace { _tmp: tmp, cache, out }
    }

    fn out(&self) -> &Path {
        Path::new(&self.out)
    }

    fn cmd(&self, sub: &str, extra: &[&str]) -> Output {
        let mut args = vec![sub, "--cache-dir", &self.cache, "--out-dir", &self.out];
        args.extend_from_slice(extra);
        run(&args)
    }
}

#[test]
fn sieve_manifest() {
    let ws = Workspace::new();
    assert_eq!(code(&ws.cmd("sieve", &["--X", "100", "--v", "1"])), 0);
    let text = read(ws.out(), "primes.csv");
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p");
    assert_eq!(lines[1..], ["5", "13", "17", "29", "37", "41", "53", "61", "73", "89", "97"]);

    assert_eq!(code(&ws.cmd("sieve", &["--X", "2"])), 0);
    assert_eq!(read(ws.out(), "primes.csv"), "p\n");

    let bad = ws.cmd("sieve", &["--v", "2"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("residue class"));
}

#[test]
fn unwritable_output_is_an_error() {
    let ws = Workspace::new();
    fs::create_dir_all(ws.out().parent().unwrap()).unwrap();
    fs::write(ws.out(), "a file, not a directory").unwrap();
    assert_eq!(code(&ws.cmd("sieve", &["--X", "100"])), 1);
}

#[test]
fn zeros_cache_lifecycle() {
    let ws = Workspace::new();
    let args = ["--X", "150", "--v", "3"];
    assert_eq!(code(&ws.cmd("zeros", &args)), 0);
    let first = json(ws.out(), "zeros_summary.json");
    let n = first["primes"].as_u64().unwrap();
    assert_eq!(n, 18);
    assert_eq!(first["computed"].as_u64(), Some(n));
    assert_eq!(read(ws.out(), "zeros_failures.csv"), "p,error\n");

    // rerun: every prime is a hit
    assert_eq!(code(&ws.cmd("zeros", &args)), 0);
    let second = json(ws.out(), "zeros_summary.json");
    assert_eq!(second["cache_hits"].as_u64(), Some(n));
    assert_eq!(second["computed"].as_u64(), Some(0));
    assert_eq!(second["total_zeros"], first["total_zeros"]);

    // a different format version on disk forces a full recompute
    for entry in fs::read_dir(&ws.cache).unwrap() {
        let path = entry.unwrap().path();
        let mut bytes = fs::read(&path).unwrap();
        bytes[8..12].copy_from_slice(&0u32.to_le_bytes());
        fs::write(&path, bytes).unwrap();
    }
    assert_eq!(code(&ws.cmd("zeros", &args)), 0);
    let third = json(ws.out(), "zeros_summary.json");
    assert_eq!(third["computed"].as_u64(), Some(n));
    assert_eq!(third["total_zeros"], first["total_zeros"]);
}

#[test]
fn zeros_prime_subset() {
    let ws = Workspace::new();
    assert_eq!(code(&ws.cmd("zeros", &["--X", "1000", "--primes", "101,409"])), 0);
    let s = json(ws.out(), "zeros_summary.json");
    assert_eq!(s["primes"].as_u64(), Some(2));
    let mut files: Vec<String> = fs::read_dir(&ws.cache).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    files.sort();
    assert_eq!(files, ["101.qlz", "409.qlz"]);
    // 103 is 3 mod 4
    assert_eq!(code(&ws.cmd("zeros", &["--X", "1000", "--primes", "101,103"])), 2);
}

#[test]
fn partial_failure_exit_code() {
    let ws = Workspace::new();
    fs::create_dir_all(Path::new(&ws.cache).join("13.qlz")).unwrap();
    let o = ws.cmd("zeros", &["--X", "40"]);
    assert_eq!(code(&o), 4);
    assert!(String::from_utf8_lossy(&o.stderr).contains("p = 13"));
    let failures = read(ws.out(), "zeros_failures.csv");
    assert!(failures.starts_with("p,error\n13,"), "{failures}");
    assert_eq!(json(ws.out(), "zeros_summary.json")["failed"].as_u64(), Some(1));
}

#[test]
fn missing_cache_lists_primes() {
    let ws = Workspace::new();
    assert_eq!(code(&ws.cmd("zeros", &["--X", "60", "--primes", "5,13"])), 0);
    for sub in ["formfactor", "density", "ratios", "nonvanish", "report"] {
        let o = ws.cmd(sub, &["--X", "60"]);
        assert_eq!(code(&o), 3, "{sub}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains("missing primes: 17,29,37,41,53"), "{sub}: {err}");
    }
}

#[test]
fn experiment_outputs() {
    let ws = Workspace::new();
    let base = ["--X", "300", "--tf", "fejer:0.5,fejer:0.9,gaussian:1"];
    assert_eq!(code(&ws.cmd("zeros", &base)), 0);

    assert_eq!(code(&ws.cmd("formfactor", &base)), 0);
    let ff = read(ws.out(), "formfactor.csv");
    assert!(ff.starts_with("alpha,F,prediction,gap\n0,"));
    assert_eq!(ff.lines().count(), 42);
    let svg = read(ws.out(), "formfactor.svg");
    assert!(svg.contains(r#"viewBox="0 0 640 400""#) && svg.contains("main terms"));
    assert_eq!(svg.matches("<polyline").count(), 2);

    assert_eq!(code(&ws.cmd("density", &base)), 0);
    let d = read(ws.out(), "density.csv");
    assert!(d.starts_with("X,empirical,limit,ratios,X_star\n"));
    assert_eq!(d.lines().count(), 1 + 3);
    let e = read(ws.out(), "explicit.csv");
    assert!(e.starts_with("p,x,lhs_re,rhs_re,residual\n"));
    assert_eq!(e.lines().count(), 1 + 3 * 4);
    assert!(ws.out().join("density.svg").exists() && ws.out().join("explicit.svg").exists());

    assert_eq!(code(&ws.cmd("ratios", &base)), 0);
    let r = read(ws.out(), "ratios.csv");
    let mut lines = r.lines();
    assert_eq!(lines.next(), Some("X,v,statistic,empirical,prediction,gap"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2 + 3 + 2);
    for row in &rows {
        assert_eq!(row.len(), 6);
        assert!(row[5].parse::<f64>().unwrap().is_finite(), "{row:?}");
    }
    // r = 0.15 < 1/log 300 ≈ 0.175 lies outside the conjecture's range, β = 0.2 inside
    assert!(rows[0][2].ends_with("[out-of-range]"), "{:?}", rows[0]);
    assert_eq!(rows[1][2], "ratio(alpha=0.1;beta=0.2)");

    assert_eq!(code(&ws.cmd("nonvanish", &base)), 0);
    let nv = read(ws.out(), "nonvanish.csv");
    assert!(nv.starts_with("p,central_value,status\n5,"));
    assert_eq!(nv.lines().count(), 1 + 29);
    let s = json(ws.out(), "nonvanish_summary.json");
    assert_eq!(s["bounds"].as_array().unwrap().len(), 4);
    assert_eq!(s["proportion_nonzero"].as_f64(), Some(1.0));
}

#[test]
fn report_is_deterministic_and_embeds_config() {
    let ws = Workspace::new();
    let args = ["--X", "200", "--v", "3", "--alpha-grid", "0:1:0.25", "--threads", "2"];
    assert_eq!(code(&ws.cmd("zeros", &args)), 0);
    assert_eq!(code(&ws.cmd("report", &args)), 0);
    let first = read(ws.out(), "report.json");
    assert_eq!(code(&ws.cmd("report", &args)), 0);
    assert_eq!(first, read(ws.out(), "report.json"));

    let r: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["config"]["X"], 200);
    assert_eq!(r["config"]["v"], 3);
    assert_eq!(r["config"]["alpha_grid"], "0:1:0.25");
    assert_eq!(r["config"]["threads"], 2);
    assert_eq!(r["cache"]["version"], 1);
    assert_eq!(r["formfactor"]["rows"].as_array().unwrap().len(), 5);
    assert_eq!(r["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn config_file_precedence() {
    let ws = Workspace::new();
    let cfg = Path::new(&ws.out).parent().unwrap().join("run.conf");
    fs::write(&cfg, "# small run\nX = 100\nv = 3\n").unwrap();
    let cfg = cfg.display().to_string();
    assert_eq!(code(&ws.cmd("sieve", &["--config", &cfg])), 0);
    assert_eq!(read(ws.out(), "primes.csv").lines().count(), 1 + 13);
    assert_eq!(code(&ws.cmd("sieve", &["--config", &cfg, "--v", "1"])), 0);
    assert_eq!(read(ws.out(), "primes.csv").lines().count(), 1 + 11);

    fs::write(&cfg, "X = 100\nbogus = 1\n").unwrap();
    assert_eq!(code(&ws.cmd("sieve", &["--config", &cfg])), 2);
}
