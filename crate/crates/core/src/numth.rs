//! Integer and prime arithmetic: a segmented sieve, Legendre symbols by the
//! reciprocity ladder, von Mangoldt weights, the logarithmic integral and
//! character sums over primes in a residue class mod 4.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quad::{integrate_with_breaks, QuadOptions};

/// Numbers covered by one sieve segment.
pub const SEGMENT_SIZE: usize = 1 << 20;

/// Primes `p <= limit` with `p ≡ residue_class (mod 4)`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSet {
    pub limit: u64,
    pub residue_class: u64,
    pub primes: Vec<u64>,
}

impl PrimeSet {
    /// `π(X; 4, v)`, the family size `X*`.
    pub fn count(&self) -> usize {
        self.primes.len()
    }
}

/// Von Mangoldt weight of `n` together with the square flag used to split
/// the diagonal from the off-diagonal terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArithWeight {
    pub n: u64,
    pub lambda_n: f64,
    pub is_square: bool,
}

impl ArithWeight {
    pub fn of(n: u64) -> Self {
        ArithWeight { n, lambda_n: von_mangoldt(n), is_square: is_square(n) }
    }
}

pub fn check_residue_class(v: u64) -> Result<()> {
    if v == 1 || v == 3 {
        Ok(())
    } else {
        Err(Error::InvalidResidueClass(v))
    }
}

fn small_primes(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Calls `f` on every prime `<= limit` in ascending order, sieving one
/// segment of [`SEGMENT_SIZE`] numbers at a time.
pub fn for_each_prime<F: FnMut(u64)>(limit: u64, mut f: F) {
    if limit < 2 {
        return;
    }
    let base = small_primes(isqrt(limit));
    let mut seg = vec![true; SEGMENT_SIZE];
    let mut lo = 0u64;
    while lo <= limit {
        let hi = (lo + SEGMENT_SIZE as u64 - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        seg[..len].fill(true);
        for &q in &base {
            if q * q > hi {
                break;
            }
            let start = (q * q).max(lo.div_ceil(q) * q);
            let mut j = start;
            while j <= hi {
                seg[(j - lo) as usize] = false;
                j += q;
            }
        }
        for (i, &is_p) in seg[..len].iter().enumerate() {
            let n = lo + i as u64;
            if is_p && n >= 2 {
                f(n);
            }
        }
        lo = hi + 1;
    }
}

/// All primes `<= limit`.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for_each_prime(limit, |p| out.push(p));
    out
}

/// All primes `p <= x` with `p ≡ v (mod 4)`.
pub fn sieve_primes(x: u64, v: u64) -> Result<PrimeSet> {
    check_residue_class(v)?;
    let mut primes = Vec::new();
    for_each_prime(x, |p| {
        if p % 4 == v {
            primes.push(p);
        }
    });
    Ok(PrimeSet { limit: x, residue_class: v, primes })
}

pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// Jacobi symbol `(a|n)` for odd `n >= 1`.
pub fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(n|p)` for an odd prime `p` (primality is the caller's
/// responsibility; only evenness and `p < 3` are rejected).
pub fn legendre(n: i64, p: u64) -> Result<i8> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidArgument(format!("legendre modulus {p} is not an odd prime")));
    }
    let r = n.rem_euclid(p as i64) as u64;
    Ok(jacobi(r, p))
}

/// `Λ(n)`: `log q` when `n` is a power of the prime `q`, else 0.
pub fn von_mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let q = smallest_prime_factor(n);
    let mut m = n;
    while m % q == 0 {
        m /= q;
    }
    if m == 1 {
        (q as f64).ln()
    } else {
        0.0
    }
}

/// Primality by trial division.
pub fn is_prime(n: u64) -> bool {
    n >= 2 && smallest_prime_factor(n) == n
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// `Li(X) = ∫_2^X du / log u`, by adaptive Gauss–Kronrod in the variable
/// `w = log u` with a break at `u = e`.
///
/// The absolute error is below `1e-10` wherever that exceeds the double
/// precision resolution of the result (about `X ≤ 10^6`); beyond, the
/// tolerance grows to a few ulps of `Li(X)`.
pub fn li(x: f64) -> Result<f64> {
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("li requires X >= 2, got {x}")));
    }
    if x == 2.0 {
        return Ok(0.0);
    }
    let lo = 2f64.ln();
    let hi = x.ln();
    let scale = x / hi;
    let opts = QuadOptions { abs_tol: 1e-10f64.max(16.0 * f64::EPSILON * scale), rel_tol: 0.0, max_intervals: 2000 };
    let r = integrate_with_breaks(|w: f64| w.exp() / w, lo, hi, &[1.0], opts)?;
    Ok(r.value)
}

/// `S(n) = Σ_{p ≤ X, p ≡ v (4)} (n|p)`.
pub fn char_sum_over_primes(n: u64, x: u64, v: u64) -> Result<i64> {
    let set = sieve_primes(x, v)?;
    Ok(char_sums_batched(&[n], &set.primes)[0])
}

/// `Λ(n) · S(n)`.
pub fn lambda_weighted_sum(n: u64, x: u64, v: u64) -> Result<f64> {
    let lam = von_mangoldt(n);
    if lam == 0.0 {
        check_residue_class(v)?;
        return Ok(0.0);
    }
    Ok(lam * char_sum_over_primes(n, x, v)? as f64)
}

/// Smallest-prime-factor table for `0..=n`.
pub fn spf_table(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Character sums `S(n)` for a block of `ns` over the given odd primes.
///
/// The prime loop is split into chunks summed in parallel. For a dense
/// block (largest `n` comparable to the block size) each prime's character
/// is tabulated on `1..=max n` by complete multiplicativity, so only the
/// symbols at primes need the reciprocity ladder.
pub fn char_sums_batched(ns: &[u64], primes: &[u64]) -> Vec<i64> {
    let nmax = ns.iter().copied().max().unwrap_or(0);
    let dense = nmax <= 10_000_000 && nmax <= 64 * ns.len() as u64 + 100_000;
    let spf = if dense { spf_table(nmax as usize) } else { Vec::new() };
    let chunk = (primes.len() / (4 * rayon::current_num_threads()).max(1)).max(64);
    primes
        .par_chunks(chunk)
        .map(|ps| {
            let mut acc = vec![0i64; ns.len()];
            let mut chi = vec![0i8; if dense { nmax as usize + 1 } else { 0 }];
            for &p in ps {
                if dense {
                    if nmax >= 1 {
                        chi[1] = 1;
                    }
                    for m in 2..=nmax as usize {
                        let q = spf[m] as usize;
                        chi[m] = if q == m { jacobi(m as u64 % p, p) } else { chi[q] * chi[m / q] };
                    }
                    for (a, &n) in acc.iter_mut().zip(ns) {
                        if n > 0 {
                            *a += chi[n as usize] as i64;
                        }
                    }
                } else {
                    for (a, &n) in acc.iter_mut().zip(ns) {
                        *a += jacobi(n % p, p) as i64;
                    }
                }
            }
            acc
        })
        .reduce(
            || vec![0i64; ns.len()],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

/// Largest `|S(n)| / (√X log X)` over non-square `2 <= n <= n_max`,
/// returned with the maximising `n`.
pub fn max_normalized_char_sum(x: u64, v: u64, n_max: u64) -> Result<(f64, u64)> {
    let set = sieve_primes(x, v)?;
    let ns: Vec<u64> = (2..=n_max).filter(|&n| !is_square(n)).collect();
    let sums = char_sums_batched(&ns, &set.primes);
    let norm = (x as f64).sqrt() * (x as f64).ln();
    let mut best = (0.0, 0);
    for (&n, &s) in ns.iter().zip(&sums) {
        let r = s.unsigned_abs() as f64 / norm;
        if r > best.0 {
            best = (r, n);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn euler_criterion(n: i64, p: u64) -> i8 {
        let r = n.rem_euclid(p as i64) as u128;
        if r == 0 {
            return 0;
        }
        let (mut base, mut e, mut acc) = (r, (p as u128 - 1) / 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u128;
            }
            base = base * base % p as u128;
            e >>= 1;
        }
        if acc == 1 {
            1
        } else {
            -1
        }
    }

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && smallest_prime_factor(n) == n
    }

    #[test]
    fn sieve_small_cases() {
        assert_eq!(sieve_primes(20, 1).unwrap().primes, vec![5, 13, 17]);
        assert_eq!(sieve_primes(20, 3).unwrap().primes, vec![3, 7, 11, 19]);
        assert!(sieve_primes(2, 1).unwrap().primes.is_empty());
        assert_eq!(sieve_primes(20, 2), Err(Error::InvalidResidueClass(2)));
    }

    #[test]
    fn sieve_crosses_segments() {
        let limit = 2 * SEGMENT_SIZE as u64 + 12_345;
        let ps = primes_up_to(limit);
        // π(2109497) from an independent count
        let count = (0..=limit).filter(|&n| trial_is_prime(n)).count();
        assert_eq!(ps.len(), count);
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(sieve_primes(1_000_000, 1).unwrap().count() + sieve_primes(1_000_000, 3).unwrap().count() + 1, 78_498);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(2, 7).unwrap(), 1);
        assert_eq!(legendre(3, 5).unwrap(), -1);
        assert_eq!(legendre(14, 7).unwrap(), 0);
        assert!(legendre(3, 2).is_err());
        assert!(legendre(3, 8).is_err());
    }

    #[test]
    fn legendre_matches_euler_and_is_multiplicative() {
        for p in sieve_primes(200, 1).unwrap().primes.into_iter().chain(sieve_primes(200, 3).unwrap().primes) {
            let pp = p as i64;
            for n in -3 * pp..3 * pp {
                assert_eq!(legendre(n, p).unwrap(), euler_criterion(n, p), "({n}|{p})");
            }
            for m in (1..=pp * pp).step_by(7) {
                for n in (1..=pp * pp).step_by(13) {
                    assert_eq!(
                        legendre(m * n, p).unwrap(),
                        legendre(m, p).unwrap() * legendre(n, p).unwrap()
                    );
                }
            }
            for k in 1..pp {
                if k % pp != 0 {
                    assert_eq!(legendre(k * k, p).unwrap(), 1);
                }
            }
        }
    }

    #[test]
    fn parity_of_minus_one() {
        for p in sieve_primes(1000, 1).unwrap().primes {
            assert_eq!(legendre(-1, p).unwrap(), 1);
        }
        for p in sieve_primes(1000, 3).unwrap().primes {
            assert_eq!(legendre(-1, p).unwrap(), -1);
        }
    }

    #[test]
    fn von_mangoldt_examples() {
        assert!((von_mangoldt(8) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(von_mangoldt(12), 0.0);
        assert_eq!(von_mangoldt(1), 0.0);
        assert!((von_mangoldt(49) - 7f64.ln()).abs() < 1e-15);
        for m in 2..300u64 {
            assert_eq!(von_mangoldt(m * m), von_mangoldt(m));
        }
        let w = ArithWeight::of(9);
        assert!(w.is_square && (w.lambda_n - 3f64.ln()).abs() < 1e-15);
    }

    fn li_series(x: f64) -> f64 {
        // Ramanujan's series for li(x); Li(X) = li(X) - li(2)
        let ramanujan = |x: f64| {
            let l = x.ln();
            let mut sum = 0.0;
            let mut fact = 1.0;
            let mut inner = 0.0;
            let mut pow = 1.0;
            for n in 1..200 {
                fact *= n as f64;
                pow *= l;
                if (n - 1) % 2 == 0 {
                    inner += 1.0 / (2 * ((n - 1) / 2) + 1) as f64;
                }
                let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
                let term = sign * pow / (fact * 2f64.powi(n - 1)) * inner;
                sum += term;
                if term.abs() < 1e-18 * sum.abs() && n > 10 {
                    break;
                }
            }
            0.577_215_664_901_532_9 + l.ln() + x.sqrt() * sum
        };
        ramanujan(x) - ramanujan(2.0)
    }

    #[test]
    fn li_values() {
        assert_eq!(li(2.0).unwrap(), 0.0);
        assert!(li(1.5).is_err());
        // mpmath: li(10) - li(2)
        assert!((li(10.0).unwrap() - 5.120_435_724_669_805).abs() < 1e-9);
        for x in [10.0, 100.0, 1e4, 1e6] {
            let a = li(x).unwrap();
            assert!((a - li_series(x)).abs() < 1e-10f64.max(1e-14 * a), "{x}: {a} vs {}", li_series(x));
        }
        let pi = sieve_primes(1_000_000, 1).unwrap().count() + sieve_primes(1_000_000, 3).unwrap().count();
        assert!((li(1e6).unwrap() - pi as f64).abs() < 200.0);
    }

    #[test]
    fn char_sum_examples() {
        assert_eq!(char_sum_over_primes(4, 20, 3).unwrap(), 4);
        assert_eq!(char_sum_over_primes(1, 20, 1).unwrap(), 3);
        assert_eq!(char_sum_over_primes(9, 20, 3).unwrap(), 3);
        let s = char_sum_over_primes(2, 10_000, 1).unwrap();
        assert!((s.unsigned_abs() as f64) <= 3.0 * 100.0 * 1e4f64.ln());
        assert_eq!(lambda_weighted_sum(12, 100, 1).unwrap(), 0.0);
        assert!((lambda_weighted_sum(9, 20, 3).unwrap() - 3.0 * 3f64.ln()).abs() < 1e-14);
        let direct: i64 = sieve_primes(100, 1).unwrap().primes.iter().map(|&p| legendre(2, p).unwrap() as i64).sum();
        assert!((lambda_weighted_sum(2, 100, 1).unwrap() - 2f64.ln() * direct as f64).abs() < 1e-14);
    }

    #[test]
    fn batched_matches_direct() {
        let set = sieve_primes(5000, 3).unwrap();
        let ns: Vec<u64> = (1..=600).collect();
        let batched = char_sums_batched(&ns, &set.primes);
        for (&n, &b) in ns.iter().zip(&batched) {
            let direct: i64 = set.primes.iter().map(|&p| jacobi(n % p, p) as i64).sum();
            assert_eq!(b, direct, "n = {n}");
        }
        let sparse = char_sums_batched(&[123_456_789_011, 2], &set.primes);
        assert_eq!(sparse[1], batched[1]);
    }

    #[test]
    fn square_sums_count_non_dividing_primes() {
        let set = sieve_primes(3000, 3).unwrap();
        for m in [2u64, 3, 6, 15, 21] {
            let n = m * m;
            let dividing = set.primes.iter().filter(|&&p| n % p == 0).count() as i64;
            assert_eq!(char_sums_batched(&[n], &set.primes)[0], set.count() as i64 - dividing);
        }
    }

    #[test]
    fn empirical_grh_constant_is_small() {
        for x in [1_000u64, 10_000] {
            for v in [1, 3] {
                let (c, _) = max_normalized_char_sum(x, v, 2_000).unwrap();
                assert!(c <= 3.0, "X={x} v={v}: {c}");
            }
        }
    }

    #[test]
    fn count_consistency_with_li() {
        for x in [1_000u64, 10_000, 100_000, 1_000_000] {
            let half_li = 0.5 * li(x as f64).unwrap();
            for v in [1, 3] {
                let c = sieve_primes(x, v).unwrap().count() as f64;
                assert!((c - half_li).abs() <= 2.0 * (x as f64).sqrt() * (x as f64).ln());
            }
        }
    }

    proptest! {
        #[test]
        fn sieve_members_are_primes_in_class(x in 2u64..5000, odd in any::<bool>()) {
            let v = if odd { 3 } else { 1 };
            let set = sieve_primes(x, v).unwrap();
            let expected: Vec<u64> = (2..=x).filter(|&n| trial_is_prime(n) && n % 4 == v).collect();
            prop_assert_eq!(set.primes, expected);
        }

        #[test]
        fn jacobi_ladder_equals_euler(n in -1_000_000i64..1_000_000, idx in 0usize..500) {
            let ps = primes_up_to(4000);
            let p = ps[1 + idx % (ps.len() - 1)];
            prop_assert_eq!(legendre(n, p).unwrap(), euler_criterion(n, p));
        }
    }
}
