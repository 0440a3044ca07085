//! Low-lying zeros of `L(s, χ_p)` with their argument-principle certificate.
//!
//! ```text
//! cargo run --release --example zeros -- 1009 20
//! ```

use std::time::Instant;

use lowlying::lfunc::QuadChar;
use lowlying::zeros::{count_zeros, find_zeros, smooth_count};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let p: u64 = args.first().map(|s| s.parse()).transpose()?.unwrap_or(1009);
    let t: f64 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(20.0);
    let chi = QuadChar::new(p)?;

    let start = Instant::now();
    let zl = find_zeros(&chi, t)?;
    let elapsed = start.elapsed();
    println!("p = {p} (v = {}), T = {t}: {} zeros in {:.2?}", chi.v, zl.len(), elapsed);
    println!("certified: {}, central flag: {}", zl.certified, zl.central_flag);
    println!("argument principle: {}, main term: {:.3}", count_zeros(&chi, t)?, smooth_count(&chi, t));
    for (k, g) in zl.gammas.iter().enumerate() {
        println!("  γ_{:<3} = {g:.12}", k + 1);
    }
    Ok(())
}
