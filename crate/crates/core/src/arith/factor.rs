use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular::mul_mod_u64;
use super::primality::{is_prime, is_prime_u64};
use crate::{Error, Result};

/// Effort bounds for [`factorize`]. Exceeding them is a hard error, never a
/// wrong answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorConfig {
    /// Trial division runs over all candidates up to this bound.
    pub trial_bound: u64,
    /// Iteration cap for each Pollard–Brent rho attempt.
    pub rho_iterations: u64,
    /// Number of rho attempts (distinct polynomial constants) per cofactor.
    pub rho_attempts: u32,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 22,
            rho_attempts: 8,
        }
    }
}

impl FactorConfig {
    pub fn with_rho_iterations(mut self, iterations: u64) -> Self {
        self.rho_iterations = iterations;
        self
    }
}

/// Prime factorization of a positive integer: primes strictly increasing,
/// exponents at least 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(BigInt, u32)>,
}

impl Factorization {
    /// Build from `(prime, exponent)` pairs in any order, merging repeats.
    /// Every prime is checked with [`is_prime`].
    pub fn from_factors<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BigInt, u32)>,
    {
        let mut factors: Vec<(BigInt, u32)> = Vec::new();
        for (p, e) in pairs {
            if e == 0 {
                continue;
            }
            if !is_prime(&p) {
                return Err(Error::NotPrime(p));
            }
            factors.push((p, e));
        }
        Ok(Self::normalized(factors))
    }

    fn normalized(mut factors: Vec<(BigInt, u32)>) -> Self {
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BigInt, u32)> = Vec::with_capacity(factors.len());
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        Factorization { factors: merged }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(BigInt, u32)> {
        self.factors.iter()
    }

    /// The factors as machine words. Panics if a prime exceeds `u64`.
    pub fn iter_u64(&self) -> impl Iterator<Item = (u64, u32)> + '_ {
        self.factors
            .iter()
            .map(|(p, e)| (p.to_u64().expect("prime fits in u64"), *e))
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, p: &BigInt) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// The integer this factorization represents.
    pub fn value(&self) -> BigInt {
        self.factors
            .iter()
            .fold(BigInt::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// Factorization of the product `self · other`.
    pub fn merge(&self, other: &Factorization) -> Factorization {
        let mut all = self.factors.clone();
        all.extend(other.factors.iter().cloned());
        Self::normalized(all)
    }

    pub(crate) fn from_sorted_unchecked(factors: Vec<(BigInt, u32)>) -> Self {
        Self::normalized(factors)
    }
}

/// Complete prime factorization of `n ≥ 1`: trial division up to
/// `cfg.trial_bound`, then Pollard–Brent rho on what is left.
pub fn factorize(n: &BigInt, cfg: &FactorConfig) -> Result<Factorization> {
    if !n.is_positive() {
        return Err(Error::domain("factorize needs n >= 1"));
    }
    if let Some(small) = n.to_u64() {
        return factorize_u64(small, cfg);
    }
    let mut rem = n.magnitude().clone();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    while d <= cfg.trial_bound {
        if let Some(r) = rem.to_u64() {
            let tail = factorize_u64(r, cfg).map_err(|_| Error::IncompleteFactorization {
                n: n.clone(),
                cofactor: BigInt::from(r),
            })?;
            out.extend(tail.factors);
            return Ok(Factorization::normalized(out));
        }
        if (&rem % d).is_zero() {
            let mut e = 0;
            while (&rem % d).is_zero() {
                rem /= d;
                e += 1;
            }
            out.push((BigInt::from(d), e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = alloc::vec![rem];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        let as_int = BigInt::from(m.clone());
        if let Some(r) = m.to_u64() {
            let tail = factorize_u64(r, cfg)?;
            out.extend(tail.factors);
        } else if is_prime(&as_int) {
            out.push((as_int, 1));
        } else {
            match rho_big(&m, cfg) {
                Some(f) => {
                    let g = &m / &f;
                    stack.push(f);
                    stack.push(g);
                }
                None => {
                    return Err(Error::IncompleteFactorization {
                        n: n.clone(),
                        cofactor: as_int,
                    })
                }
            }
        }
    }
    Ok(Factorization::normalized(out))
}

pub fn factorize_u64(n: u64, cfg: &FactorConfig) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("factorize needs n >= 1"));
    }
    let mut rem = n;
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: u64, e: u32, out: &mut Vec<(BigInt, u32)>| out.push((BigInt::from(p), e));
    let mut d = 2u64;
    while d <= cfg.trial_bound && d.saturating_mul(d) <= rem {
        if rem % d == 0 {
            let mut e = 0;
            while rem % d == 0 {
                rem /= d;
                e += 1;
            }
            push(d, e, &mut out);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = alloc::vec![rem];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, 1, &mut out);
            continue;
        }
        match rho_u64(m, cfg) {
            Some(f) => {
                stack.push(f);
                stack.push(m / f);
            }
            None => {
                return Err(Error::IncompleteFactorization {
                    n: BigInt::from(n),
                    cofactor: BigInt::from(m),
                })
            }
        }
    }
    Ok(Factorization::normalized(out))
}

/// Euler's totient from the factorization of `n`.
pub fn euler_phi(n: &BigInt, cfg: &FactorConfig) -> Result<BigInt> {
    let f = factorize(n, cfg)?;
    Ok(f.iter().fold(BigInt::one(), |acc, (p, e)| {
        acc * (p - 1u32) * p.pow(e - 1)
    }))
}

fn rho_u64(n: u64, cfg: &FactorConfig) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let step = |x: u64, c: u64| (mul_mod_u64(x, x, n) + c) % n;
    for attempt in 0..cfg.rho_attempts as u64 {
        let c = attempt + 1;
        let mut y = 2 + attempt;
        let mut r = 1u64;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut x = y;
        let mut ys = y;
        let mut spent = 0u64;
        const BATCH: u64 = 128;
        while g == 1 && spent < cfg.rho_iterations {
            x = y;
            for _ in 0..r {
                y = step(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = step(y, c);
                    q = mul_mod_u64(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            spent += 2 * r;
            r *= 2;
        }
        if g == n {
            loop {
                ys = step(ys, c);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
    None
}

fn rho_big(n: &BigUint, cfg: &FactorConfig) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    for attempt in 0..cfg.rho_attempts as u64 {
        let c = BigUint::from(attempt + 1);
        let step = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2 + attempt);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r = 1u64;
        let mut spent = 0u64;
        const BATCH: u64 = 128;
        while g.is_one() && spent < cfg.rho_iterations {
            x = y.clone();
            for _ in 0..r {
                y = step(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = step(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            spent += 2 * r;
            r *= 2;
        }
        if &g == n {
            loop {
                ys = step(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && &g != n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.iter_u64().collect()
    }

    #[test]
    fn examples() {
        let cfg = FactorConfig::default();
        assert_eq!(pairs(&factorize_u64(455, &cfg).unwrap()), [(5, 1), (7, 1), (13, 1)]);
        assert!(factorize_u64(1, &cfg).unwrap().is_empty());
        assert_eq!(
            pairs(&factorize_u64(47058, &cfg).unwrap()),
            [(2, 1), (3, 1), (11, 1), (23, 1), (31, 1)]
        );
        assert!(factorize(&BigInt::from(0), &cfg).is_err());
        assert!(factorize(&BigInt::from(-6), &cfg).is_err());
    }

    #[test]
    fn reconstructs_up_to_1e5() {
        let cfg = FactorConfig::default();
        for n in 1..=100_000u64 {
            let f = factorize_u64(n, &cfg).unwrap();
            assert_eq!(f.value(), BigInt::from(n));
            assert!(f.primes().all(is_prime));
            let primes: Vec<_> = f.primes().cloned().collect();
            assert!(primes.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn rho_splits_semiprimes() {
        // trial division alone cannot reach these factors
        let cfg = FactorConfig { trial_bound: 100, ..FactorConfig::default() };
        let n = 1_000_003u64 * 998_244_353;
        assert_eq!(pairs(&factorize_u64(n, &cfg).unwrap()), [(1_000_003, 1), (998_244_353, 1)]);
        let n6: BigInt = BigInt::from(2214502422u64).pow(2) + 1u32;
        let f = factorize(&n6, &FactorConfig::default()).unwrap();
        assert_eq!(f.value(), n6);
        let big: BigInt = "1729101023519".parse::<BigInt>().unwrap() * "8491659218261819498490029296021".parse::<BigInt>().unwrap();
        let f = factorize(&big, &FactorConfig::default()).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.value(), big);
    }

    #[test]
    fn effort_cap_is_a_hard_error() {
        let cfg = FactorConfig { trial_bound: 10, rho_iterations: 4, rho_attempts: 1 };
        let big = BigInt::from(1729101023519u64) * BigInt::from(1000000000039u64);
        assert!(factorize(&big, &cfg).unwrap_err().is_resource());
        let n = 1_000_003u64 * 998_244_353;
        assert!(factorize_u64(n, &cfg).unwrap_err().is_resource());
    }

    #[test]
    fn phi_examples() {
        let cfg = FactorConfig::default();
        let phi = |n: u64| euler_phi(&BigInt::from(n), &cfg).unwrap();
        assert_eq!(phi(9), 6.into());
        assert_eq!(phi(1), 1.into());
        assert_eq!(phi(729), 486.into());
        for n in 1..300u64 {
            let brute = (1..=n).filter(|k| k.gcd(&n) == 1).count();
            assert_eq!(phi(n), BigInt::from(brute));
        }
    }

    #[test]
    fn from_factors_checks_primality() {
        assert!(Factorization::from_factors([(BigInt::from(4), 1)]).is_err());
        let f = Factorization::from_factors([(BigInt::from(3), 1), (BigInt::from(2), 2), (BigInt::from(3), 1)]).unwrap();
        assert_eq!(f.value(), BigInt::from(36));
        assert_eq!(f.exponent_of(&BigInt::from(3)), 2);
    }
}
