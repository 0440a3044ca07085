//! The published report schema and cache-format document stay in sync with
//! the code.

use std::path::PathBuf;

use lowlying::cli::commands::{build_report, Progress};
use lowlying::cli::RunConfig;
use lowlying::zeros::{decode, encode, find_zeros, ZeroCache, ZeroList};
use lowlying::lfunc::QuadChar;

fn docs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

fn schema() -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(docs().join("report.schema.json")).unwrap()).unwrap()
}

#[test]
fn report_validates_against_schema() {
    let tmp = tempfile::TempDir::new().unwrap();
    let cfg = RunConfig {
        big_x: 120,
        v: 1,
        cache_dir: tmp.path().join("cache"),
        out_dir: tmp.path().join("out"),
        alpha_grid: "0,0.5,1".into(),
        ..RunConfig::default()
    };
    let cache = ZeroCache::new(&cfg.cache_dir).unwrap();
    let primes = lowlying::numth::sieve_primes(cfg.big_x, cfg.v).unwrap().primes;
    assert!(lowlying::zeros::ensure_zeros(&primes, cfg.t, &cache).failures.is_empty());

    let report = serde_json::to_value(build_report(&cfg, Progress { quiet: true }).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let errors: Vec<String> = validator.iter_errors(&report).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}");

    let mut broken = report.clone();
    broken.as_object_mut().unwrap().remove("schema_version");
    assert!(!validator.is_valid(&broken));
    let mut broken = report;
    broken["config"]["v"] = 2.into();
    assert!(!validator.is_valid(&broken));
}

/// Hex bytes of the example block in `cache-format.md`.
fn documented_example() -> Vec<u8> {
    let text = std::fs::read_to_string(docs().join("cache-format.md")).unwrap();
    let block = text.split("```").nth(1).expect("example block");
    block
        .lines()
        .filter(|l| !l.trim().is_empty())
        .flat_map(|l| l.split_whitespace().skip(1).map(|h| u8::from_str_radix(h, 16).unwrap()).collect::<Vec<_>>())
        .collect()
}

#[test]
fn cache_document_example_matches_encoder() {
    let bytes = documented_example();
    assert_eq!(bytes.len(), 33 + 8);
    let zl = decode(&bytes).unwrap().unwrap();
    assert_eq!((zl.p, zl.t_max, zl.gammas.len(), zl.central_flag), (5, 8.0, 1, false));
    assert_eq!(encode(&zl), bytes);

    let computed = find_zeros(&QuadChar::new(5).unwrap(), 8.0).unwrap();
    assert!((computed.gammas[0] - zl.gammas[0]).abs() < 1e-11);
    let rebuilt = ZeroList { gammas: computed.gammas.clone(), ..zl };
    assert_eq!(encode(&rebuilt)[..33], bytes[..33]);
}
