//! The Mellin pair `(K, a)`: closed form against contour integration,
//! self-duality `a(1/y) = y a(y)`, and recovery of `K` from `a`.
//!
//! ```text
//! cargo run --release --example kernel -- gauss2
//! ```

use lowlying::kernel::{log_grid, mellin_recover_k, self_duality_defect, KernelSpec, MellinPair};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "gauss".into());
    let k = KernelSpec::from_name(&name)?;
    println!("kernel {}: K(1/2) = {}", k.name(), k.k_half());

    println!("{:>10} {:>22} {:>22} {:>10}", "y", "a(y) closed", "a(y) contour", "rel diff");
    for y in log_grid(1e-2, 1e2, 9) {
        let cf = k.a_closed_form(y).ok_or("kernel has no closed form")?;
        let num = k.a_numeric_auto(y)?;
        println!("{y:>10.4} {cf:>22.15e} {num:>22.15e} {:>10.2e}", (num - cf).abs() / cf);
    }

    let pair = MellinPair::new(k.clone());
    println!("self-duality defect on [1e-3, 1e3]: {:.2e}", self_duality_defect(&pair, &log_grid(1e-3, 1e3, 49))?);
    for s in [Complex64::new(0.5, 0.0), Complex64::new(1.25, 1.5), Complex64::new(-0.5, -1.0)] {
        let got = mellin_recover_k(&pair, s)?;
        let want = k.eval_k(s)?;
        println!("K({s}) = {want:.12}, from a: {got:.12}");
    }
    Ok(())
}
