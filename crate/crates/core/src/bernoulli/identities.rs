use alloc::format;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::{staudt_clausen_denominator, BernoulliTable};
use crate::arith::{
    binomial, binomial_row, euler_phi, factorize_u64, is_prime_u64, modulo, rational_mod,
    FactorConfig, Rational,
};
use crate::egyptian::d_of;
use crate::power_sums::power_sum_mod;
use crate::{Error, Result};

/// Both sides of an exact identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl IdentityCheck {
    fn new(lhs: Rational, rhs: Rational) -> Self {
        IdentityCheck {
            holds: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `Σ_{k=m−1}^{n−1} (−1)^k C(n,k) C(k+1,m) B_{k+1−m}/(k+1) = (−1)^{m+1} C(n,m)`.
#[allow(clippy::needless_range_loop)]
pub fn pascal_bernoulli_check(n: usize, m: usize, table: &BernoulliTable) -> Result<IdentityCheck> {
    if m < 1 || m > n {
        return Err(Error::domain(format!("need 1 <= m <= n, got n = {n}, m = {m}")));
    }
    let row = binomial_row(n as u64);
    let mut lhs = Rational::zero();
    for k in (m - 1)..n {
        let b = table.require(k + 1 - m)?;
        if b.is_zero() {
            continue;
        }
        let c = int(&row[k] * binomial(k as u64 + 1, m as u64));
        lhs += sign(k) * c * b / int(BigInt::from(k + 1));
    }
    let rhs = sign(m + 1) * int(row[m].clone());
    Ok(IdentityCheck::new(lhs, rhs))
}

/// For even `n`:
/// `Σ_{k=⌈(m−1)/2⌉}^{(n−2)/2} C(n,2k) C(2k+1,m) B_{2k+1−m}/(2k+1) = (−1)^{m+1} C(n,m)/2`.
pub fn even_pascal_bernoulli_check(
    n: usize,
    m: usize,
    table: &BernoulliTable,
) -> Result<IdentityCheck> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::domain(format!("n must be even and at least 2, got {n}")));
    }
    if m < 1 || m >= n {
        return Err(Error::domain(format!("need 1 <= m < n, got n = {n}, m = {m}")));
    }
    let row = binomial_row(n as u64);
    let mut lhs = Rational::zero();
    for k in (m - 1).div_ceil(2)..=(n - 2) / 2 {
        let b = table.require(2 * k + 1 - m)?;
        if b.is_zero() {
            continue;
        }
        let c = int(&row[2 * k] * binomial(2 * k as u64 + 1, m as u64));
        lhs += c * b / int(BigInt::from(2 * k + 1));
    }
    let rhs = sign(m + 1) * int(row[m].clone()) / int(BigInt::from(2));
    Ok(IdentityCheck::new(lhs, rhs))
}

/// `B_{2nk} − B_{2n}` in lowest terms, checked against the predicted
/// denominator `D_{2nk}/D_{2n}` and the numerator congruence
/// `numer ≡ d(denom) (mod denom)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliDifference {
    pub numerator: BigInt,
    pub denominator: BigInt,
    /// `D_{2nk}/D_{2n}`.
    pub predicted_denominator: BigInt,
    pub denominator_matches: bool,
    pub d_check: bool,
}

pub fn bernoulli_diff(
    n: usize,
    k: usize,
    table: &BernoulliTable,
    cfg: &FactorConfig,
) -> Result<BernoulliDifference> {
    if n == 0 || k == 0 {
        return Err(Error::domain("n and k must be positive"));
    }
    let diff = table.require(2 * n * k)? - table.require(2 * n)?;
    let big = staudt_clausen_denominator(2 * n * k);
    let small = staudt_clausen_denominator(2 * n);
    let (predicted, rem) = big.div_rem(&small);
    if !rem.is_zero() {
        return Err(Error::violation(format!("D_{} does not divide D_{}", 2 * n, 2 * n * k)));
    }
    let numerator = diff.numer().clone();
    let denominator = diff.denom().clone();
    let d = d_of(&denominator, cfg)?;
    let d_check = modulo(&(&numerator - d), &denominator).is_zero();
    Ok(BernoulliDifference {
        denominator_matches: denominator == predicted,
        numerator,
        denominator,
        predicted_denominator: predicted,
        d_check,
    })
}

/// The three equivalent conditions of Agoh's theorem for `n ≥ 2`:
/// (i) `p | n/p − 1` for every prime `p | n`; (ii) `S_{φ(n)}(n−1) ≡ −1 (mod n)`;
/// (iii) `n B_{φ(n)} ≡ −1 (mod n)`.
///
/// The exponent is `φ(n)`. With `n − 1` in its place, (ii) and (iii) also
/// demand `p − 1 | n/p − 1` and fail at every Giuga number (30 first).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AgohReport {
    pub cond_i: bool,
    pub cond_ii: bool,
    pub cond_iii: bool,
}

impl AgohReport {
    pub fn agree(&self) -> bool {
        self.cond_i == self.cond_ii && self.cond_ii == self.cond_iii
    }
}

/// Evaluate Agoh's three conditions. Disagreement is reported as a
/// [`Error::Violation`].
pub fn agoh_check(n: u64, table: &BernoulliTable) -> Result<AgohReport> {
    if n < 2 {
        return Err(Error::domain("agoh_check needs n >= 2"));
    }
    let cfg = FactorConfig::default();
    let f = factorize_u64(n, &cfg)?;
    let phi: u64 = euler_phi(&n.into(), &cfg)?
        .try_into()
        .map_err(|_| Error::domain("phi(n) overflow"))?;
    let cond_i = f.iter_u64().all(|(p, _)| (n / p - 1) % p == 0);
    let cond_ii = power_sum_mod(n - 1, phi, n) == n - 1;
    let nb = table.require(phi as usize)? * Rational::from_integer(n.into());
    let modulus = BigInt::from(n);
    let reduced = rational_mod(&nb, &modulus)
        .ok_or_else(|| Error::NotIntegral(format!("{n}·B_{phi} = {nb} modulo {n}")))?;
    let cond_iii = reduced == &modulus - 1u32;
    let report = AgohReport {
        cond_i,
        cond_ii,
        cond_iii,
    };
    if !report.agree() {
        return Err(Error::violation(format!("Agoh conditions disagree at n = {n}: {report:?}")));
    }
    Ok(report)
}

/// Outcome of the two parts of the `S_{φ(n)}(n)` theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoReport {
    pub phi: u64,
    /// `S_{φ(n)}(n) mod n`.
    pub residue: u64,
    /// Part (i), only defined for square-free `n`: `p | n/p + d` for all
    /// `p | n` exactly when `d ≡ S_{φ(n)}(n) (mod n)`. Checked for every
    /// residue `d` when `n ≤ 10^4`, otherwise for `d = residue` only.
    pub criterion_i: Option<bool>,
    /// Part (ii): `S_{φ(n)}(n) ≡ n B_{φ(n)} (mod n)`.
    pub congruence_ii: bool,
}

pub fn pseudo_check(n: u64, table: &BernoulliTable) -> Result<PseudoReport> {
    if n == 0 {
        return Err(Error::domain("pseudo_check needs n >= 1"));
    }
    let cfg = FactorConfig::default();
    let f = factorize_u64(n, &cfg)?;
    let phi: u64 = euler_phi(&n.into(), &cfg)?
        .try_into()
        .map_err(|_| Error::domain("phi(n) overflow"))?;
    let residue = power_sum_mod(n, phi, n);
    let holds_for = |d: u64| f.iter_u64().all(|(p, _)| (n / p % p + d % p) % p == 0);
    let criterion_i = f.is_square_free().then(|| {
        if n <= 10_000 {
            (0..n).all(|d| holds_for(d) == (d == residue))
        } else {
            holds_for(residue)
        }
    });
    let nb = table.require(phi as usize)? * Rational::from_integer(n.into());
    let modulus = BigInt::from(n);
    let reduced = rational_mod(&nb, &modulus)
        .ok_or_else(|| Error::NotIntegral(format!("{n}·B_{phi} = {nb} modulo {n}")))?;
    Ok(PseudoReport {
        phi,
        residue,
        criterion_i,
        congruence_ii: reduced == BigInt::from(residue),
    })
}

/// `S_{p−1}(p) ≡ p B_{p−1} (mod p^3)` for a prime `p > 3`.
pub fn prime_supercongruence_check(p: u64, table: &BernoulliTable) -> Result<bool> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.into()));
    }
    if p <= 3 {
        return Err(Error::hypothesis(format!("prime must exceed 3, got {p}")));
    }
    let modulus = BigInt::from(p).pow(3);
    let m = u64::try_from(&modulus).map_err(|_| Error::domain("p^3 exceeds 64 bits"))?;
    let lhs = power_sum_mod(p, p - 1, m);
    let pb = table.require(p as usize - 1)? * Rational::from_integer(p.into());
    let rhs = rational_mod(&pb, &modulus)
        .ok_or_else(|| Error::NotIntegral(format!("{p}·B_{} modulo {p}^3", p - 1)))?;
    Ok(BigInt::from(lhs) == rhs)
}
