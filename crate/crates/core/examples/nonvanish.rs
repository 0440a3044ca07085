//! Central values `L(1/2, χ_p)` over a family and the Fejér-kernel bound on
//! the proportion that vanish.
//!
//! ```text
//! cargo run --release --example nonvanish -- 10000 1
//! ```

use lowlying::density::Family;
use lowlying::kernel::KernelSpec;
use lowlying::nonvanish::{fejer_bound, survey_central_values, LAMBDA_GRID};
use lowlying::zeros::{ZeroCache, DEFAULT_T};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let big_x: u64 = args.first().map(|s| s.parse()).transpose()?.unwrap_or(10_000);
    let v: u64 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(1);

    let survey = survey_central_values(big_x, v)?;
    let smallest = survey.records.iter().min_by(|a, b| a.central_value.abs().total_cmp(&b.central_value.abs()));
    println!(
        "X = {big_x}, v = {v}: {} central values, proportion nonzero {:.4}, undetermined {}",
        survey.records.len(),
        survey.proportion_nonzero(),
        survey.undetermined()
    );
    if let Some(r) = smallest {
        println!("smallest |L(1/2)|: {:.3e} at p = {}", r.central_value, r.p);
    }

    let cache = ZeroCache::new(std::env::temp_dir().join("lowlying-zero-cache"))?;
    let (family, _) = Family::compute(big_x, v, DEFAULT_T, &cache)?;
    let kernel = KernelSpec::gauss();
    println!("{:>6} {:>12} {:>12} {:>10} {:>10}", "lambda", "zero sum", "-1 + 2/λ", "slack", "agreement");
    for lambda in LAMBDA_GRID {
        let b = fejer_bound(lambda, &family, &kernel)?;
        println!("{lambda:>6} {:>12.6} {:>12.6} {:>10.4} {:>10.1e}", b.lhs_zero_sum, b.bound, b.slack, b.agreement());
    }
    Ok(())
}
