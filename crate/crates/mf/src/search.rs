//! Parallel driver for the Giuga / primary pseudoperfect searches.

use mf_core::egyptian::{search_chunk, sieving_primes, SearchOutcome, SearchTarget};
use mf_core::{Error, FactorConfig, Result};
use rayon::prelude::*;

const DEFAULT_CHUNK: u64 = 1 << 18;

/// `search` split into chunks of `chunk` numbers (0 picks a default) run on
/// the rayon pool. Output is identical to the sequential search.
pub fn parallel_search(
    lo: u64,
    hi: u64,
    target: SearchTarget,
    cfg: &FactorConfig,
    chunk: u64,
) -> Result<SearchOutcome> {
    if lo == 0 || lo > hi {
        return Err(Error::Domain("search needs 1 <= lo <= hi".into()));
    }
    let chunk = if chunk == 0 { DEFAULT_CHUNK } else { chunk };
    let primes = sieving_primes(hi);
    let starts: Vec<u64> = (0..=(hi - lo) / chunk).map(|i| lo + i * chunk).collect();
    let parts: Vec<Result<SearchOutcome>> = starts
        .par_iter()
        .map(|&a| search_chunk(a, hi.min(a.saturating_add(chunk - 1)), target, &primes, cfg))
        .collect();
    let mut out = SearchOutcome::default();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// PPP hits `n` with `n − 1` and `n + 1` both prime.
pub fn twin_prime_neighbours(hits: &[u64]) -> Vec<u64> {
    hits.iter()
        .copied()
        .filter(|&n| n >= 2 && mf_core::arith::is_prime_u64(n - 1) && mf_core::arith::is_prime_u64(n + 1))
        .collect()
}
