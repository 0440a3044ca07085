//! Ratios-conjecture predictions for the family against direct averages:
//! the Euler-product identity, the log-derivative sum and a ratio sum.
//!
//! ```text
//! cargo run --release --example ratios -- 2000 3
//! ```

use lowlying::density::TestFunction;
use lowlying::ratios::{
    euler_product_check, log_deriv_empirical, log_deriv_prediction, ratios_empirical, ratios_main_terms_unchecked,
    scaled_density_prediction, RatiosParams,
};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let big_x: u64 = args.first().map(|s| s.parse()).transpose()?.unwrap_or(2000);
    let v: u64 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let c = |re: f64| Complex64::new(re, 0.0);

    println!("Euler product defect at α = β = 0.1, P = 1e6: {:.2e}", euler_product_check(c(0.1), c(0.1), 1_000_000)?);

    for r in [0.15, 0.2] {
        let pred = log_deriv_prediction(c(r), big_x, v)?;
        let emp = log_deriv_empirical(r, big_x, v, 1e-4)?;
        let tag = if pred.in_range { "" } else { " (outside the stated range)" };
        println!("Σ L'/L(1/2 + {r}): direct {emp:.4}, predicted {:.4}{tag}", pred.value.re);
    }

    let params = RatiosParams { alpha: c(0.1), beta: c(0.2), big_x, v };
    let emp = ratios_empirical(&params)?;
    let pred = ratios_main_terms_unchecked(&params)?;
    println!("Σ L(0.6)/L(0.7): direct {:.4}, predicted {:.4}", emp.re, pred.re);

    let g = TestFunction::gaussian(1.0)?;
    let sd = scaled_density_prediction(&g, big_x, v)?;
    println!("scaled density of {}: predicted {:.5}, limit {:.5}", g.name, sd.value, sd.limit);
    Ok(())
}
