//! The congruence `Σ_{p|n} 1/p + d/n ≡ 1 (mod 1)`, its canonical solution
//! `d(n) = −Σ_{p|n} n/p`, the calculus of `d`, and Giuga / primary
//! pseudoperfect numbers.

pub mod fixtures;
mod generate;
mod search;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::{factorize, modulo, FactorConfig, Factorization, Rational};
use crate::{Error, Result};

pub use generate::{generate, generate_factored, Generated, GenerationRule};
pub use search::{
    primes_up_to, search, search_chunk, sieving_primes, SearchOutcome, SearchTarget, SIEVE_LIMIT,
};

/// `d(n)` from a known factorization of `n`.
pub fn d_of_factored(f: &Factorization) -> BigInt {
    let n = f.value();
    -f.primes().fold(BigInt::zero(), |acc, p| acc + &n / p)
}

/// `d(n) = −Σ_{p|n} n/p`; `d(1) = 0`.
pub fn d_of(n: &BigInt, cfg: &FactorConfig) -> Result<BigInt> {
    Ok(d_of_factored(&factorize(n, cfg)?))
}

/// Tags attached to an integer by [`classify`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Classification(u8);

impl Classification {
    pub const GIUGA: Self = Classification(1);
    pub const STRONG_GIUGA: Self = Classification(2);
    pub const PRIMARY_PSEUDOPERFECT: Self = Classification(4);
    pub const SQUARE_FREE: Self = Classification(8);
    pub const PRIME: Self = Classification(16);

    const NAMES: [(Self, &'static str); 5] = [
        (Self::GIUGA, "GIUGA"),
        (Self::STRONG_GIUGA, "STRONG_GIUGA"),
        (Self::PRIMARY_PSEUDOPERFECT, "PRIMARY_PSEUDOPERFECT"),
        (Self::SQUARE_FREE, "SQUARE_FREE"),
        (Self::PRIME, "PRIME"),
    ];

    pub const fn empty() -> Self {
        Classification(0)
    }

    pub const fn union(self, other: Self) -> Self {
        Classification(self.0 | other.0)
    }

    pub const fn contains(self, other: Self) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn insert(&mut self, other: Self) {
        self.0 |= other.0;
    }

    pub fn names(self) -> impl Iterator<Item = &'static str> {
        Self::NAMES
            .into_iter()
            .filter(move |(f, _)| self.contains(*f))
            .map(|(_, name)| name)
    }

    /// Parse a single flag name as printed by [`Classification::names`].
    pub fn from_name(name: &str) -> Option<Self> {
        Self::NAMES.iter().find(|(_, n)| *n == name).map(|(f, _)| *f)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.names().collect();
        f.write_str(&names.join(","))
    }
}

/// `n` together with `d(n)` and its residue in `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgyptianSolution {
    pub n: BigInt,
    pub d_raw: BigInt,
    pub d_canonical: BigInt,
    pub classification: Classification,
}

impl EgyptianSolution {
    pub fn from_factorization(f: &Factorization) -> Self {
        let n = f.value();
        let d_raw = d_of_factored(f);
        EgyptianSolution {
            d_canonical: modulo(&d_raw, &n),
            classification: classify_factored(f),
            n,
            d_raw,
        }
    }

    pub fn new(n: &BigInt, cfg: &FactorConfig) -> Result<Self> {
        Ok(Self::from_factorization(&factorize(n, cfg)?))
    }
}

pub fn classify_factored(f: &Factorization) -> Classification {
    let n = f.value();
    let d = d_of_factored(f);
    let mut c = Classification::empty();
    if f.is_square_free() {
        c.insert(Classification::SQUARE_FREE);
    }
    if f.is_prime() {
        c.insert(Classification::PRIME);
    }
    let composite = n > BigInt::one() && !f.is_prime();
    if composite && modulo(&(&d + 1u32), &n).is_zero() {
        c.insert(Classification::GIUGA);
        if d == -(&n + 1u32) {
            c.insert(Classification::STRONG_GIUGA);
        }
    }
    if n > BigInt::one() && d == BigInt::one() - &n {
        c.insert(Classification::PRIMARY_PSEUDOPERFECT);
    }
    c
}

pub fn classify(n: &BigInt, cfg: &FactorConfig) -> Result<Classification> {
    Ok(classify_factored(&factorize(n, cfg)?))
}

/// True if `(n, d)` satisfies `Σ_{p|n} 1/p + d/n ≡ 1 (mod 1)`.
pub fn is_solution(f: &Factorization, d: &BigInt) -> bool {
    let n = f.value();
    modulo(&(d - d_of_factored(f)), &n).is_zero()
}

/// For a solution `(n, d)`: `p^e | n ⟺ p^{e−1} | d` for every prime `p | n`
/// and `1 ≤ e ≤ v_p(n) + 1`, and `n` square-free `⟺ gcd(n, d) = 1`.
pub fn prime_power_criterion(n: &BigInt, d: &BigInt, cfg: &FactorConfig) -> Result<bool> {
    let f = factorize(n, cfg)?;
    if !is_solution(&f, d) {
        return Err(Error::NotSolution {
            n: n.clone(),
            d: d.clone(),
        });
    }
    let mut ok = true;
    for (p, a) in f.iter() {
        for e in 1..=a + 1 {
            let left = (n % p.pow(e)).is_zero();
            let right = (d % p.pow(e - 1)).is_zero();
            ok &= left == right;
        }
    }
    ok &= f.is_square_free() == n.gcd(d).is_one();
    Ok(ok)
}

fn power_of(f: &Factorization, k: u32) -> Factorization {
    let pairs = f.iter().map(|(p, e)| (p.clone(), e * k)).collect();
    Factorization::from_sorted_unchecked(pairs)
}

fn mismatch(rule: &str, lhs: &BigInt, rhs: &BigInt) -> Error {
    Error::violation(format!("{rule}: d computed directly is {lhs}, the rule gives {rhs}"))
}

/// `d(n^k) = n^{k−1} d(n)`, returned after checking it against `d(n^k)`.
pub fn leibnitz_power(n: &BigInt, k: u32, cfg: &FactorConfig) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::domain("k must be positive"));
    }
    let f = factorize(n, cfg)?;
    let rhs = n.pow(k - 1) * d_of_factored(&f);
    let lhs = d_of_factored(&power_of(&f, k));
    if lhs != rhs {
        return Err(mismatch("power rule", &lhs, &rhs));
    }
    Ok(rhs)
}

/// `d(Mn) = M d(n) + n d(M) − L d(G)` with `G = gcd(M, n)`, `L = lcm(M, n)`.
pub fn leibnitz_product(m: &BigInt, n: &BigInt, cfg: &FactorConfig) -> Result<BigInt> {
    let fm = factorize(m, cfg)?;
    let fn_ = factorize(n, cfg)?;
    let g = m.gcd(n);
    let l = m.lcm(n);
    let fg = factorize(&g, cfg)?;
    let rhs = m * d_of_factored(&fn_) + n * d_of_factored(&fm) - l * d_of_factored(&fg);
    let lhs = d_of_factored(&fm.merge(&fn_));
    if lhs != rhs {
        return Err(mismatch("product rule", &lhs, &rhs));
    }
    Ok(rhs)
}

/// `d(a/b) = (b d(a) − a d(b))/b² + ((a/b)/γ) d(γ)` with `γ = gcd(b, a/b)`.
pub fn leibnitz_quotient(a: &BigInt, b: &BigInt, cfg: &FactorConfig) -> Result<BigInt> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::domain("a and b must be positive"));
    }
    let (c, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::domain(format!("{b} does not divide {a}")));
    }
    let gamma = b.gcd(&c);
    let da = d_of(a, cfg)?;
    let db = d_of(b, cfg)?;
    let dg = d_of(&gamma, cfg)?;
    let rhs = Rational::new(b * da - a * db, b * b) + Rational::from_integer(&c / &gamma * dg);
    let lhs = d_of(&c, cfg)?;
    if !rhs.is_integer() || rhs.to_integer() != lhs {
        return Err(Error::violation(format!(
            "quotient rule: d({c}) = {lhs}, the rule gives {rhs}"
        )));
    }
    Ok(lhs)
}

/// For coprime `M, n > 1` with `d(M) ≡ ε (mod M)` and `d(n) ≡ ε (mod n)`:
/// returns whether `d(Mn) ≢ ε (mod Mn)`, which must always be true.
pub fn never_product_check(
    m: &BigInt,
    n: &BigInt,
    epsilon: i8,
    cfg: &FactorConfig,
) -> Result<bool> {
    if epsilon != 1 && epsilon != -1 {
        return Err(Error::domain("epsilon must be +1 or -1"));
    }
    if *m <= BigInt::one() || *n <= BigInt::one() {
        return Err(Error::hypothesis("M and n must both exceed 1"));
    }
    if !m.gcd(n).is_one() {
        return Err(Error::hypothesis(format!("gcd({m}, {n}) != 1")));
    }
    let eps = BigInt::from(epsilon);
    let fm = factorize(m, cfg)?;
    let fn_ = factorize(n, cfg)?;
    for (x, f) in [(m, &fm), (n, &fn_)] {
        let d = d_of_factored(f);
        if !modulo(&(&d - &eps), x).is_zero() {
            return Err(Error::hypothesis(format!("d({x}) = {d} is not {epsilon} mod {x}")));
        }
    }
    let mn = m * n;
    let d = d_of_factored(&fm.merge(&fn_));
    Ok(!modulo(&(d - eps), &mn).is_zero())
}

/// Split the primes of `n` into `Q` and its complement `R`, returning
/// `(d_Q mod n, d_R mod n)` with `d_Q = −Σ_{p∈Q} n/p`. Their sum is checked
/// against `d(n)`.
pub fn subset_split(n: &BigInt, q: &[BigInt], cfg: &FactorConfig) -> Result<(BigInt, BigInt)> {
    let f = factorize(n, cfg)?;
    for p in q {
        if f.exponent_of(p) == 0 {
            return Err(Error::domain(format!("{p} is not a prime divisor of {n}")));
        }
    }
    let (mut dq, mut dr) = (BigInt::zero(), BigInt::zero());
    for p in f.primes() {
        if q.contains(p) {
            dq -= n / p;
        } else {
            dr -= n / p;
        }
    }
    let (dq, dr) = (modulo(&dq, n), modulo(&dr, n));
    if !modulo(&(&dq + &dr - d_of_factored(&f)), n).is_zero() {
        return Err(Error::violation(format!("d_Q + d_R differs from d({n})")));
    }
    Ok((dq, dr))
}

/// The displayed instance of the polynomial equation at `x = 19`:
/// `n(x) = x(−2x+1)(−2x−1)`.
pub const SIGNED_INSTANCE: [i64; 4] = [19, -37, -39, 27417];

/// True if `Σ 1/t` over `terms` is exactly zero.
pub fn signed_sum_is_zero(terms: &[i64]) -> bool {
    if terms.contains(&0) {
        return false;
    }
    terms
        .iter()
        .fold(Rational::zero(), |acc, &t| acc + Rational::new(BigInt::one(), t.into()))
        .is_zero()
}

/// `1/19 + 1/(−37) + 1/(−39) + 1/27417 = 0`, with `27417 = 19·(−37)·(−39)`.
pub fn signed_prime_instance_check() -> bool {
    let [a, b, c, n] = SIGNED_INSTANCE;
    a * b * c == n && signed_sum_is_zero(&SIGNED_INSTANCE)
}

/// A human-readable reason, used in error text.
pub(crate) fn describe(n: &BigInt, c: Classification) -> String {
    format!("{n} [{c}]")
}
