//! Integers, rationals, primality, factorization and p-adic digit machinery.

mod factor;
mod modular;
mod padic;
mod primality;

use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use factor::{euler_phi, factorize, factorize_u64, FactorConfig, Factorization};
pub use modular::{
    inv_mod_u64, mod_pow, mod_pow_u64, mul_mod_u64, multiplicative_order, primitive_root,
};
pub use padic::{
    base_p_digits, padic_order, padic_order_u64, trailing_digit_run, trailing_digit_run_by_digits,
    trailing_digit_run_by_order, valuation,
};
pub use primality::{is_prime, is_prime_u64, prime_certificate, PrimeCertificate, MR_BASES};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;
/// Exact rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `v_p(q)`: a natural number, or infinity for `q = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PAdicOrder {
    Finite(u64),
    Infinity,
}

impl PAdicOrder {
    pub fn is_infinite(self) -> bool {
        matches!(self, PAdicOrder::Infinity)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            PAdicOrder::Finite(v) => Some(v),
            PAdicOrder::Infinity => None,
        }
    }

    /// True if `self ≥ k`.
    pub fn at_least(self, k: u64) -> bool {
        self >= PAdicOrder::Finite(k)
    }
}

impl Ord for PAdicOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (PAdicOrder::Infinity, PAdicOrder::Infinity) => Ordering::Equal,
            (PAdicOrder::Infinity, _) => Ordering::Greater,
            (_, PAdicOrder::Infinity) => Ordering::Less,
            (PAdicOrder::Finite(a), PAdicOrder::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for PAdicOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for PAdicOrder {
    type Output = PAdicOrder;

    fn add(self, rhs: PAdicOrder) -> PAdicOrder {
        match (self, rhs) {
            (PAdicOrder::Finite(a), PAdicOrder::Finite(b)) => PAdicOrder::Finite(a + b),
            _ => PAdicOrder::Infinity,
        }
    }
}

impl Add<u64> for PAdicOrder {
    type Output = PAdicOrder;

    fn add(self, rhs: u64) -> PAdicOrder {
        self + PAdicOrder::Finite(rhs)
    }
}

impl fmt::Display for PAdicOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PAdicOrder::Finite(v) => write!(f, "{v}"),
            PAdicOrder::Infinity => f.write_str("inf"),
        }
    }
}

/// Least non-negative residue of `a` modulo `m` (`m > 0`).
pub fn modulo(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Reduce a rational `a/b` modulo `m`, defined only when `gcd(b, m) = 1`.
pub fn rational_mod(r: &BigRational, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let den = r.denom();
    let inv = inverse_mod(den, m)?;
    Some((r.numer() * inv).mod_floor(m))
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let a = a.mod_floor(m);
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    BigInt::from_biguint(Sign::Plus, acc)
}

/// Row `C(n, 0..=n)` of Pascal's triangle.
pub(crate) fn binomial_row(n: u64) -> alloc::vec::Vec<BigInt> {
    let mut row = alloc::vec::Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

