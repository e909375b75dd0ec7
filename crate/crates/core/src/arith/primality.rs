use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::{factorize, FactorConfig};
use super::modular::{mod_pow_u64, mul_mod_u64};
use crate::{Error, Result};

/// Bases used by the Miller–Rabin test above 64 bits: the first 24 primes.
/// The first 12 already make the test deterministic below `3.3 · 10^24`.
pub const MR_BASES: [u32; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic for every `u64`: strong probable-prime tests to the first
/// twelve prime bases have no composite survivor below `3.18 · 10^23`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = mod_pow_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Primality of an arbitrary integer. Exact below `2^64`; above that, a
/// Miller–Rabin test over the 24 bases in [`MR_BASES`] (deterministic below
/// `3.3 · 10^24`, probabilistic beyond). Use [`prime_certificate`] for a
/// proof.
pub fn is_prime(n: &BigInt) -> bool {
    if !n.is_positive() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let n = n.magnitude();
    for p in MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    'bases: for a in MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// A Pratt (Lucas) certificate of primality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeCertificate {
    /// Settled by the deterministic 64-bit test.
    Word(u64),
    /// `witness` has order exactly `n − 1` modulo `n`; every prime factor of
    /// `n − 1` carries its own certificate.
    Lucas {
        n: BigInt,
        witness: BigInt,
        factors: Vec<(BigInt, u32, Box<PrimeCertificate>)>,
    },
}

impl PrimeCertificate {
    pub fn prime(&self) -> BigInt {
        match self {
            PrimeCertificate::Word(p) => BigInt::from(*p),
            PrimeCertificate::Lucas { n, .. } => n.clone(),
        }
    }

    /// Re-check the certificate from scratch.
    pub fn verify(&self) -> bool {
        match self {
            PrimeCertificate::Word(p) => is_prime_u64(*p),
            PrimeCertificate::Lucas { n, witness, factors } => {
                let n_minus_1 = n - 1u32;
                let mut product = BigInt::one();
                for (q, e, cert) in factors {
                    if cert.prime() != *q || !cert.verify() {
                        return false;
                    }
                    product *= q.pow(*e);
                }
                if product != n_minus_1 {
                    return false;
                }
                if !witness.modpow(&n_minus_1, n).is_one() {
                    return false;
                }
                factors
                    .iter()
                    .all(|(q, _, _)| !witness.modpow(&(&n_minus_1 / q), n).is_one())
            }
        }
    }
}

/// Build a Pratt certificate for `n`. Requires factoring `n − 1` (and
/// recursively the predecessors of its prime factors) within `cfg`.
pub fn prime_certificate(n: &BigInt, cfg: &FactorConfig) -> Result<PrimeCertificate> {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Ok(PrimeCertificate::Word(small))
        } else {
            Err(Error::NotPrime(n.clone()))
        };
    }
    if !is_prime(n) {
        return Err(Error::NotPrime(n.clone()));
    }
    let n_minus_1 = n - 1u32;
    let f = factorize(&n_minus_1, cfg)?;
    let mut witness = BigInt::from(2u32);
    loop {
        if witness >= *n {
            return Err(Error::NotPrime(n.clone()));
        }
        if witness.modpow(&n_minus_1, n).is_one()
            && f
                .iter()
                .all(|(q, _)| !witness.modpow(&(&n_minus_1 / q), n).is_one())
        {
            break;
        }
        witness += 1u32;
        if witness > BigInt::from(1_000_000u32) {
            return Err(Error::hypothesis("no Lucas witness below 10^6"));
        }
    }
    let mut factors = Vec::with_capacity(f.len());
    for (q, e) in f.iter() {
        factors.push((q.clone(), *e, Box::new(prime_certificate(q, cfg)?)));
    }
    Ok(PrimeCertificate::Lucas {
        n: n.clone(),
        witness,
        factors,
    })
}
