use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};

use super::primality::is_prime;
use super::PAdicOrder;
use crate::{Error, Result};

/// `v_p(q)` without checking that `p` is prime (`p ≥ 2`).
pub fn valuation(q: &BigInt, p: &BigInt) -> PAdicOrder {
    if q.is_zero() {
        return PAdicOrder::Infinity;
    }
    if let (Some(q), Some(p)) = (q.abs().to_u128(), p.to_u128()) {
        let mut q = q;
        let mut v = 0;
        while q % p == 0 {
            q /= p;
            v += 1;
        }
        return PAdicOrder::Finite(v);
    }
    let mut q = q.abs();
    let mut v = 0;
    loop {
        let (quot, rem) = q.div_rem(p);
        if !rem.is_zero() {
            return PAdicOrder::Finite(v);
        }
        q = quot;
        v += 1;
    }
}

/// The p-adic order of `q`; errors if `p` is not prime.
pub fn padic_order(q: &BigInt, p: &BigInt) -> Result<PAdicOrder> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.clone()));
    }
    Ok(valuation(q, p))
}

/// `v_p(q)` for machine integers; `p ≥ 2` is not checked for primality.
pub fn padic_order_u64(q: u64, p: u64) -> PAdicOrder {
    if q == 0 {
        return PAdicOrder::Infinity;
    }
    let (mut q, mut v) = (q, 0);
    while q % p == 0 {
        q /= p;
        v += 1;
    }
    PAdicOrder::Finite(v)
}

fn check_prime_word(p: u64) -> Result<()> {
    if super::is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.into()))
    }
}

/// Base-`p` digits of `m ≥ 0`, least significant first; `[0]` for `m = 0`.
pub fn base_p_digits(m: &BigInt, p: u64) -> Result<Vec<u64>> {
    check_prime_word(p)?;
    if m.is_negative() {
        return Err(Error::domain("base_p_digits needs m >= 0"));
    }
    if m.is_zero() {
        return Ok(alloc::vec![0]);
    }
    let p_big = BigInt::from(p);
    let mut digits = Vec::new();
    let mut rest = m.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&p_big);
        digits.push(r.to_u64().expect("digit below p"));
        rest = q;
    }
    Ok(digits)
}

/// Number of equal base-`p` digits at the low end of `m`, counting the
/// implicit leading zeros (so it is finite for every positive integer).
pub fn trailing_digit_run_by_digits(m: u64, p: u64) -> u64 {
    let last = m % p;
    let mut rest = m;
    let mut run = 0;
    loop {
        if rest % p != last {
            return run;
        }
        run += 1;
        rest /= p;
        if rest == 0 && last == 0 {
            // m > 0, so an all-zero tail cannot occur
            return run;
        }
    }
}

/// `v_p(m − ⌊m/p⌋) + 1`.
pub fn trailing_digit_run_by_order(m: u64, p: u64) -> PAdicOrder {
    padic_order_u64(m - m / p, p) + 1
}

/// `V_p(m)` for a positive integer `m` and prime `p`: the count of equal
/// trailing base-`p` digits, which always equals `v_p(m − ⌊m/p⌋) + 1`.
/// Both are computed and must agree. Restricted to positive integers, where
/// the value is always finite.
pub fn trailing_digit_run(m: u64, p: u64) -> Result<u64> {
    check_prime_word(p)?;
    if m == 0 {
        return Err(Error::domain("V_p needs m >= 1"));
    }
    let by_digits = trailing_digit_run_by_digits(m, p);
    let by_order = trailing_digit_run_by_order(m, p);
    if by_order != PAdicOrder::Finite(by_digits) {
        return Err(Error::violation(alloc::format!(
            "trailing digit run of {m} in base {p}: digits give {by_digits}, order gives {by_order}"
        )));
    }
    Ok(by_digits)
}
