//! The form factor `F(α, X)` of a family against its main terms.
//!
//! Zeros are cached under the system temp directory, so a second run is
//! fast.
//!
//! ```text
//! cargo run --release --example form_factor -- 5000 1
//! ```

use lowlying::density::{form_factor_grid, Family};
use lowlying::kernel::KernelSpec;
use lowlying::zeros::{ZeroCache, DEFAULT_T};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let big_x: u64 = args.first().map(|s| s.parse()).transpose()?.unwrap_or(5000);
    let v: u64 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let cache = ZeroCache::new(std::env::temp_dir().join("lowlying-zero-cache"))?;
    let (family, report) = Family::compute(big_x, v, DEFAULT_T, &cache)?;
    println!("X = {big_x}, v = {v}: {} primes ({} cached, {} computed)", family.x_star(), report.cache_hits, report.computed);

    let kernel = KernelSpec::gauss();
    let alphas: Vec<f64> = (0..=20).map(|k| k as f64 * 0.1).collect();
    let grid = form_factor_grid(&family, &alphas, &kernel)?;
    println!("{:>5} {:>12} {:>12} {:>10}", "alpha", "F", "prediction", "gap");
    for ((a, f), pr) in grid.alphas.iter().zip(&grid.values).zip(&grid.prediction) {
        println!("{a:>5.2} {f:>12.6} {pr:>12.6} {:>10.4}", f - pr);
    }
    Ok(())
}
