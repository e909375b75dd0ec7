//! Bernoulli numbers, Faulhaber polynomials, the identities and congruences
//! built on them, and the integer-scaled power-sum polynomial `Q_n`.
//!
//! Convention: `B_1 = −1/2`.

mod identities;
mod moser;
mod poly;

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::arith::{binomial_row, is_prime_u64, Rational};
use crate::{Error, Result};

pub use identities::{
    agoh_check, bernoulli_diff, even_pascal_bernoulli_check, pascal_bernoulli_check,
    prime_supercongruence_check, pseudo_check, AgohReport, BernoulliDifference, IdentityCheck,
    PseudoReport,
};
pub use moser::{cubic, moser_l_divisibility, moser_polynomial, MoserPolynomial};
pub use poly::RationalPolynomial;

/// Denominator of `B_k` predicted by von Staudt–Clausen: `Π_{(p−1) | k} p`
/// for even `k ≥ 2`; `2` for `k = 1`; `1` otherwise.
pub fn staudt_clausen_denominator(k: usize) -> BigInt {
    match k {
        0 => BigInt::one(),
        1 => BigInt::from(2u32),
        k if k % 2 == 1 => BigInt::one(),
        k => {
            let mut d = BigInt::one();
            for t in 1..=k {
                if k % t == 0 && is_prime_u64(t as u64 + 1) {
                    d *= t as u64 + 1;
                }
            }
            d
        }
    }
}

/// Tangent numbers `T_1..=T_count` (`tan x = Σ T_k x^{2k−1}/(2k−1)!`) by the
/// in-place integer recurrence of Brent and Harvey.
fn tangent_numbers(count: usize) -> Vec<BigUint> {
    if count == 0 {
        return Vec::new();
    }
    let mut t: Vec<BigUint> = Vec::with_capacity(count);
    t.push(BigUint::one());
    for k in 1..count {
        let next = &t[k - 1] * k;
        t.push(next);
    }
    for k in 1..count {
        for j in k..count {
            // 1-based: T_j ← (j − k)·T_{j−1} + (j − k + 2)·T_j
            let carry = &t[j - 1] * (j - k);
            t[j] *= j - k + 2;
            t[j] += carry;
        }
    }
    t
}

/// `B_{2k}` from the tangent number `T_k`:
/// `B_{2k} = (−1)^{k−1} 2k T_k / (2^{2k} (2^{2k} − 1))`.
///
/// The result is assembled over the von Staudt–Clausen denominator; the
/// division must be exact and the numerator coprime to it, which proves the
/// denominator.
fn even_bernoulli_from_tangent(k: usize, tangent: &BigUint) -> Rational {
    let index = 2 * k;
    let vsc = staudt_clausen_denominator(index);
    let vsc_u = vsc.magnitude();
    let scaled = tangent * BigUint::from(index) * vsc_u;
    let power_of_two_divides = scaled.trailing_zeros().map_or(true, |z| z >= index as u64);
    let mersenne = (BigUint::one() << index) - 1u32;
    let (q, r) = (scaled >> index).div_rem(&mersenne);
    assert!(
        power_of_two_divides && r.is_zero(),
        "B_{index}: denominator exceeds the von Staudt–Clausen prediction"
    );
    assert!(q.gcd(vsc_u).is_one(), "B_{index}: numerator shares a factor with its denominator");
    let sign = if k % 2 == 1 { Sign::Plus } else { Sign::Minus };
    Ratio::new_raw(BigInt::from_biguint(sign, q), vsc)
}

/// Growable table of exact Bernoulli numbers, `B_0..=B_max`.
///
/// Reads take `&self`; extension takes `&mut self`, so sharing a table
/// across threads is a matter of extending it first (or wrapping it in a
/// lock).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliTable {
    /// A table holding `B_0` and `B_1`.
    pub fn new() -> Self {
        BernoulliTable {
            values: alloc::vec![
                Rational::one(),
                Ratio::new_raw(BigInt::from(-1), BigInt::from(2))
            ],
        }
    }

    /// A table holding `B_0..=B_max`.
    pub fn up_to(max: usize) -> Self {
        let mut t = Self::new();
        t.extend_to(max);
        t
    }

    /// Rebuild a table from stored values (e.g. a cache file). Every entry is
    /// checked against the structural facts: `B_0 = 1`, `B_1 = −1/2`, zero at
    /// odd indices above 1, and von Staudt–Clausen denominators.
    pub fn from_values(values: Vec<Rational>) -> Result<Self> {
        let reference = Self::new();
        for (k, b) in values.iter().enumerate() {
            let ok = match k {
                0 | 1 => *b == reference.values[k],
                k if k % 2 == 1 => b.is_zero(),
                k => *b.denom() == staudt_clausen_denominator(k) && !b.is_zero(),
            };
            if !ok {
                return Err(Error::violation(alloc::format!("stored B_{k} = {b} is not a Bernoulli number")));
            }
        }
        if values.len() < 2 {
            return Ok(reference);
        }
        Ok(BernoulliTable { values })
    }

    /// Largest index held.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.values.get(k)
    }

    /// `B_k`, or [`Error::NotTabulated`] if the table is too short.
    pub fn require(&self, k: usize) -> Result<&Rational> {
        self.values.get(k).ok_or(Error::NotTabulated {
            index: k,
            len: self.values.len(),
        })
    }

    /// `B_k`, extending the table if needed.
    pub fn bernoulli(&mut self, k: usize) -> &Rational {
        self.extend_to(k);
        &self.values[k]
    }

    /// Make sure `B_0..=B_k` are present. The tangent-number pass is
    /// quadratic in its length, so growth at least doubles the table.
    pub fn extend_to(&mut self, k: usize) {
        let have = self.max_index();
        if k <= have {
            return;
        }
        let target = k.max(2 * have);
        let halves = target / 2;
        let tangents = tangent_numbers(halves);
        for idx in (have + 1)..=target {
            let b = if idx % 2 == 1 {
                Rational::zero()
            } else {
                even_bernoulli_from_tangent(idx / 2, &tangents[idx / 2 - 1])
            };
            self.values.push(b);
        }
    }
}

/// `B_0..=B_max` straight from the recursion `Σ_{j=0}^{k} C(k+1, j) B_j = 0`.
/// Quadratic in rational operations; used as an independent reference.
pub fn bernoulli_by_recursion(max: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(max + 1);
    b.push(Rational::one());
    for k in 1..=max {
        let row = binomial_row(k as u64 + 1);
        let mut acc = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                acc += bj * Rational::from_integer(row[j].clone());
            }
        }
        b.push(-acc / Rational::from_integer(BigInt::from(k + 1)));
    }
    b
}

/// Faulhaber's polynomial `P_n(x) = (1/(n+1)) Σ_j (−1)^j C(n+1, j) B_j x^{n+1−j}`,
/// the polynomial with `P_n(a) = S_n(a)` for every integer `a ≥ 0`.
pub fn faulhaber(n: usize, table: &BernoulliTable) -> Result<RationalPolynomial> {
    let row = binomial_row(n as u64 + 1);
    let scale = Rational::new(BigInt::one(), BigInt::from(n + 1));
    let mut coeffs = alloc::vec![Rational::zero(); n + 2];
    for j in 0..=n {
        let b = table.require(j)?;
        let mut c = b * Rational::from_integer(row[j].clone()) * &scale;
        if j % 2 == 1 {
            c = -c;
        }
        coeffs[n + 1 - j] = c;
    }
    Ok(RationalPolynomial::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn examples() {
        let mut t = BernoulliTable::new();
        assert_eq!(*t.bernoulli(12), q(-691, 2730));
        assert_eq!(*t.bernoulli(3), q(0, 1));
        assert_eq!(*t.bernoulli(1), q(-1, 2));
        assert_eq!(*t.bernoulli(0), q(1, 1));
        assert_eq!(*t.bernoulli(24), q(-236364091, 2730));
    }

    #[test]
    fn published_even_values() {
        let t = BernoulliTable::up_to(24);
        let expected = [
            (1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730), (7, 6),
            (-3617, 510), (43867, 798), (-174611, 330), (854513, 138), (-236364091, 2730),
        ];
        for (i, (n, d)) in expected.iter().enumerate() {
            assert_eq!(t.get(2 * (i + 1)).unwrap(), &q(*n, *d));
        }
    }

    #[test]
    fn tangent_route_matches_recursion() {
        let recursive = bernoulli_by_recursion(120);
        let table = BernoulliTable::up_to(120);
        assert_eq!(&table.values()[..=120], &recursive[..]);
    }

    #[test]
    fn staudt_clausen() {
        assert_eq!(staudt_clausen_denominator(24), 2730.into());
        assert_eq!(staudt_clausen_denominator(2), 6.into());
        let t = BernoulliTable::up_to(300);
        for k in (2..=300).step_by(2) {
            assert_eq!(*t.get(k).unwrap().denom(), staudt_clausen_denominator(k));
        }
    }

    #[test]
    fn incremental_extension_is_stable() {
        let mut grown = BernoulliTable::new();
        for k in [3usize, 10, 11, 40, 41, 90] {
            grown.extend_to(k);
        }
        let direct = BernoulliTable::up_to(grown.max_index());
        assert_eq!(grown, direct);
        assert!(grown.require(grown.max_index() + 1).is_err());
    }

    #[test]
    fn from_values_rejects_corruption() {
        let good = BernoulliTable::up_to(20);
        assert_eq!(BernoulliTable::from_values(good.values().to_vec()).unwrap(), good);
        let mut bad = good.values().to_vec();
        bad[12] = q(-691, 2731);
        assert!(BernoulliTable::from_values(bad).is_err());
        let mut bad = good.values().to_vec();
        bad[5] = q(1, 7);
        assert!(BernoulliTable::from_values(bad).is_err());
    }

    #[test]
    fn faulhaber_examples() {
        let t = BernoulliTable::up_to(10);
        let p2 = faulhaber(2, &t).unwrap();
        assert_eq!(p2.coefficients(), &[q(0, 1), q(1, 6), q(1, 2), q(1, 3)]);
        let p0 = faulhaber(0, &t).unwrap();
        assert_eq!(p0.coefficients(), &[q(0, 1), q(1, 1)]);
        let p4 = faulhaber(4, &t).unwrap();
        for m in 0..40i64 {
            let closed = q(m * (m + 1) * (2 * m + 1) * (3 * m * m + 3 * m - 1), 30);
            assert_eq!(p4.eval_integer(&m.into()), closed);
        }
    }

    #[test]
    fn faulhaber_matches_direct_sums() {
        let t = BernoulliTable::up_to(31);
        for n in 0..=30usize {
            let p = faulhaber(n, &t).unwrap();
            assert_eq!(p.degree(), Some(n + 1));
            let mut s = BigInt::zero();
            assert!(p.eval_integer(&BigInt::zero()).is_zero());
            for a in 1..=50u32 {
                s += BigInt::from(a).pow(n as u32);
                assert_eq!(p.eval_integer(&a.into()), Rational::from_integer(s.clone()));
            }
        }
    }
}
