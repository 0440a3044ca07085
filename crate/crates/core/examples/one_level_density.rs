//! One-level density of a family for several test functions: the empirical
//! zero sum, the ratios-conjecture prediction and the large-`X` limit.
//!
//! ```text
//! cargo run --release --example one_level_density -- 10000 3
//! ```

use lowlying::density::{density_report, limit_density, Family, TestFunction};
use lowlying::kernel::KernelSpec;
use lowlying::zeros::{ZeroCache, DEFAULT_T};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let big_x: u64 = args.first().map(|s| s.parse()).transpose()?.unwrap_or(10_000);
    let v: u64 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let cache = ZeroCache::new(std::env::temp_dir().join("lowlying-zero-cache"))?;
    let (family, _) = Family::compute(big_x, v, DEFAULT_T, &cache)?;
    let kernel = KernelSpec::gauss();
    println!("X = {big_x}, v = {v}, X* = {}", family.x_star());
    println!("{:<14} {:>11} {:>11} {:>11} {:>11} {:>10}", "test function", "empirical", "ratios", "limit", "limit (F)", "pairing");
    for name in ["fejer:0.5", "fejer:0.9", "bump:0.9", "gaussian:1"] {
        let tf = TestFunction::from_name(name)?;
        let r = density_report(&family, &tf, &kernel)?;
        let lim = limit_density(&tf)?;
        let pairing = r.pairing_residual.map(|x| format!("{x:.1e}")).unwrap_or_else(|| "-".into());
        println!(
            "{:<14} {:>11.6} {:>11.6} {:>11.6} {:>11.6} {:>10}",
            r.test_function, r.empirical, r.ratios_value, r.limit_value, lim.fourier, pairing
        );
    }
    Ok(())
}
