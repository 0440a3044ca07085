//! The explicit formula for one character: the zero side against the prime
//! side, their difference, and the exact remainder that accounts for it.
//!
//! ```text
//! cargo run --release --example explicit_formula -- 103
//! ```

use lowlying::density::explicit_formula_sides;
use lowlying::kernel::KernelSpec;
use lowlying::lfunc::QuadChar;
use lowlying::zeros::{find_zeros, DEFAULT_T};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(103);
    let chi = QuadChar::new(p)?;
    let kernel = KernelSpec::gauss();
    let zeros = find_zeros(&chi, DEFAULT_T)?;
    println!("p = {p}: {} zeros up to T = {DEFAULT_T}, kernel {}", zeros.len(), kernel.name());
    println!(
        "{:>6} {:>14} {:>14} {:>12} {:>12} {:>14} {:>10}",
        "x", "lhs", "rhs", "|lhs-rhs|", "x^1/2 resid", "exact resid", "n_max"
    );
    for x in [2.0, 4.0, 16.0, 64.0, 256.0, 1024.0] {
        let s = explicit_formula_sides(&chi, &zeros, x, &kernel)?;
        println!(
            "{x:>6} {:>14.9} {:>14.9} {:>12.3e} {:>12.5} {:>14.2e} {:>10}",
            s.lhs.re,
            s.rhs.re,
            s.residual,
            s.residual * x.sqrt(),
            s.exact_residual,
            s.n_max
        );
    }
    Ok(())
}
