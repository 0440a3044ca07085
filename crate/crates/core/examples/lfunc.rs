//! Evaluating `L(s, χ_p)` and its completion: values, the functional
//! equation self-check, and Hardy's `Z` on the critical line.
//!
//! ```text
//! cargo run --release --example lfunc -- 1009
//! ```

use lowlying::lfunc::{central_value, eval_completed, hardy_z, QuadChar};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1009);
    let chi = QuadChar::new(p)?;
    println!("χ_{p}: v = {}, parity a = {}, tol_zero = {:.2e}", chi.v, chi.a, chi.tol_zero());
    println!("L(1/2) = {:.15}", central_value(&chi)?);

    for s in [Complex64::new(2.0, 0.0), Complex64::new(0.5, 14.0), Complex64::new(-0.5, 3.0), Complex64::new(0.8, -60.0)] {
        let v = eval_completed(&chi, s)?;
        println!("s = {s:<12} L = {:<44.12} |Λ| = {:.3e}  FE residual {:.1e}  ({} terms)", v.l, v.lambda.norm(), v.fe_residual, v.terms);
    }

    println!("Z(t) on the critical line:");
    for k in 0..=10 {
        let t = k as f64;
        println!("  t = {t:>4.1}  Z = {:+.10}", hardy_z(&chi, t)?);
    }
    Ok(())
}
