use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::factor::{factorize_u64, FactorConfig};
use super::primality::is_prime_u64;
use crate::{Error, Result};

#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 {
        (a % m) * (b % m) % m
    } else {
        ((a as u128 * b as u128) % m as u128) as u64
    }
}

/// `b^e mod m` for machine-word operands; `m ≥ 1`.
pub fn mod_pow_u64(b: u64, mut e: u64, m: u64) -> u64 {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return 0;
    }
    let mut base = b % m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod_u64(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// `b^e mod m` in `[0, m)` by square-and-multiply. Negative `b` is reduced
/// first.
pub fn mod_pow(b: &BigInt, e: &BigInt, m: &BigInt) -> Result<BigInt> {
    if !m.is_positive() {
        return Err(Error::domain("modulus must be at least 1"));
    }
    if e.is_negative() {
        return Err(Error::domain("exponent must be non-negative"));
    }
    if m.is_one() {
        return Ok(BigInt::zero());
    }
    let mut base = b.mod_floor(m);
    let mut acc = BigInt::one();
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            acc = (&acc * &base).mod_floor(m);
        }
        if i + 1 < bits {
            base = (&base * &base).mod_floor(m);
        }
    }
    Ok(acc)
}

/// Least `t ≥ 1` with `a^t ≡ 1 (mod n)`. `n` need not be prime; the order
/// always divides `φ(n)`.
pub fn multiplicative_order(a: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::domain("modulus must be at least 1"));
    }
    if n == 1 {
        return Ok(1);
    }
    if a.gcd(&n) != 1 {
        return Err(Error::NotCoprime(a.into(), n.into()));
    }
    let cfg = FactorConfig::default();
    let nf = factorize_u64(n, &cfg)?;
    let mut phi = 1u64;
    for (p, e) in nf.iter_u64() {
        phi *= (p - 1) * p.pow(e - 1);
    }
    let mut t = phi;
    for (q, _) in factorize_u64(phi, &cfg)?.iter_u64() {
        while t % q == 0 && mod_pow_u64(a, t / q, n) == 1 {
            t /= q;
        }
    }
    Ok(t)
}

/// Smallest primitive root `g ≥ 2` of an odd prime power `p^d`.
pub fn primitive_root(prime_power: u64) -> Result<u64> {
    if prime_power < 3 || prime_power % 2 == 0 {
        return Err(Error::domain("primitive_root needs an odd prime power"));
    }
    let f = factorize_u64(prime_power, &FactorConfig::default())?;
    if f.len() != 1 {
        return Err(Error::domain("primitive_root needs an odd prime power"));
    }
    let (p, d) = f.iter_u64().next().expect("one factor");
    debug_assert!(is_prime_u64(p));
    let phi = (p - 1) * p.pow(d - 1);
    let phi_primes: alloc::vec::Vec<u64> = factorize_u64(phi, &FactorConfig::default())?
        .iter_u64()
        .map(|(q, _)| q)
        .collect();
    (2..prime_power)
        .filter(|g| g % p != 0)
        .find(|&g| phi_primes.iter().all(|&q| mod_pow_u64(g, phi / q, prime_power) != 1))
        .ok_or_else(|| Error::violation("odd prime power without primitive root"))
}
