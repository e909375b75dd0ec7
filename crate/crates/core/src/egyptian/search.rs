use alloc::vec::Vec;

use num_integer::Roots;

use crate::arith::{factorize_u64, FactorConfig};
use crate::{Error, Result};

/// Ranges up to this bound are handled by a segmented factor sieve (primes
/// up to `10^6`); larger `n` are factored one at a time.
pub const SIEVE_LIMIT: u64 = 1_000_000_000_000;

const SEGMENT: u64 = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchTarget {
    /// Composite `n` with `d(n) ≡ −1 (mod n)`.
    Giuga,
    /// `n > 1` with `d(n) = 1 − n`.
    Ppp,
    /// `n > 1` with `d(n) ≡ 1 (mod n)`.
    DEqualsPlusOne,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Matches in ascending order.
    pub hits: Vec<u64>,
    /// Numbers whose factorization exceeded the effort cap.
    pub skipped: Vec<u64>,
}

impl SearchOutcome {
    /// Concatenate outcomes of adjacent chunks, in order.
    pub fn extend(&mut self, other: SearchOutcome) {
        self.hits.extend(other.hits);
        self.skipped.extend(other.skipped);
    }
}

/// Primes up to `limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = alloc::vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Smallest prime list good enough for sieving up to `hi`.
pub fn sieving_primes(hi: u64) -> Vec<u64> {
    primes_up_to(Roots::sqrt(&hi.min(SIEVE_LIMIT)) + 1)
}

/// `sum` is `Σ n/p` over the distinct primes `p | n`; it equals 1 exactly
/// when `n` is prime.
fn matches(target: SearchTarget, n: u64, sum: u128) -> bool {
    if n < 2 {
        return false;
    }
    let n128 = n as u128;
    match target {
        SearchTarget::Giuga => sum != 1 && sum % n128 == 1,
        SearchTarget::Ppp => sum == n128 - 1,
        SearchTarget::DEqualsPlusOne => (sum + 1) % n128 == 0,
    }
}

/// All `n` in `[lo, hi]` with the target classification. `primes` must
/// contain every prime up to `√min(hi, SIEVE_LIMIT)` (see
/// [`sieving_primes`]). Chunks can be processed independently and their
/// outcomes concatenated in order.
pub fn search_chunk(
    lo: u64,
    hi: u64,
    target: SearchTarget,
    primes: &[u64],
    cfg: &FactorConfig,
) -> Result<SearchOutcome> {
    let mut out = SearchOutcome::default();
    if lo > hi {
        return Ok(out);
    }
    let sieve_hi = hi.min(SIEVE_LIMIT);
    let mut a = lo;
    while a <= sieve_hi {
        let b = sieve_hi.min(a.saturating_add(SEGMENT - 1));
        sieve_segment(a, b, target, primes, &mut out.hits);
        if b == u64::MAX {
            break;
        }
        a = b + 1;
    }
    for n in lo.max(SIEVE_LIMIT.saturating_add(1))..=hi {
        match factorize_u64(n, cfg) {
            Ok(f) => {
                let sum: u128 = f.iter_u64().map(|(p, _)| (n / p) as u128).sum();
                if matches(target, n, sum) {
                    out.hits.push(n);
                }
            }
            Err(e) if e.is_resource() => out.skipped.push(n),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn sieve_segment(a: u64, b: u64, target: SearchTarget, primes: &[u64], hits: &mut Vec<u64>) {
    let len = (b - a + 1) as usize;
    let mut rest: Vec<u64> = (a..=b).collect();
    let mut sum = alloc::vec![0u128; len];
    for &p in primes {
        if p.saturating_mul(p) > b {
            break;
        }
        let mut n = a.div_ceil(p) * p;
        while n <= b {
            let i = (n - a) as usize;
            sum[i] += (n / p) as u128;
            while rest[i] % p == 0 {
                rest[i] /= p;
            }
            n += p;
        }
    }
    for i in 0..len {
        let n = a + i as u64;
        if rest[i] > 1 {
            sum[i] += (n / rest[i]) as u128;
        }
        if matches(target, n, sum[i]) {
            hits.push(n);
        }
    }
}

/// All `n` in `[lo, hi]` (`1 ≤ lo ≤ hi`) with the target classification,
/// ascending, plus the numbers skipped for exceeding the factorization
/// effort.
pub fn search(lo: u64, hi: u64, target: SearchTarget, cfg: &FactorConfig) -> Result<SearchOutcome> {
    if lo == 0 || lo > hi {
        return Err(Error::domain("search needs 1 <= lo <= hi"));
    }
    search_chunk(lo, hi, target, &sieving_primes(hi), cfg)
}
