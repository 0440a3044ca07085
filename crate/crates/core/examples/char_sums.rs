//! Prime counts in the two classes mod 4 and the normalized character sums
//! `S(n, X, v) = Σ_{p <= X, p ≡ v} (n|p)` over non-square `n`.
//!
//! ```text
//! cargo run --release --example char_sums -- 100000 10000
//! ```

use lowlying::numth::{char_sum_over_primes, li, max_normalized_char_sum, sieve_primes};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let big_x: u64 = args.first().map(|s| s.parse()).transpose()?.unwrap_or(100_000);
    let n_max: u64 = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(10_000);

    println!("Li({big_x}) / 2 = {:.1}", li(big_x as f64)? / 2.0);
    for v in [1, 3] {
        let set = sieve_primes(big_x, v)?;
        let (worst, at) = max_normalized_char_sum(big_x, v, n_max)?;
        println!("v = {v}: {} primes; max |S(n)| / (X^1/2 log X) over n <= {n_max}: {worst:.4} at n = {at}", set.count());
        for n in [2, 3, 5, 6, 7] {
            println!("    S({n}) = {}", char_sum_over_primes(n, big_x, v)?);
        }
    }
    Ok(())
}
