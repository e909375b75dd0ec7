use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Zero};

use super::{faulhaber, BernoulliTable, RationalPolynomial};
use crate::arith::{binomial_row, modulo, Rational};
use crate::{Error, Result};

/// `Q_n = L_n P_n`, the power-sum polynomial scaled to integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoserPolynomial {
    pub n: usize,
    /// Integer coefficients, content 1.
    pub q: RationalPolynomial,
    /// `L_n = (n+1) lcm(R_1, …, R_n)`.
    pub l: BigInt,
    /// `R_j = D_j / gcd(D_j, C(n+1, j))` for `j = 1..=n`.
    pub r: Vec<BigInt>,
    /// gcd of the coefficients of `L_n P_n`. Expected to be 1; if not, `q`
    /// has been divided by it.
    pub content: BigInt,
    /// For even `n`: whether `x(x+1)(2x+1)` divides `Q_n`.
    pub cubic_factor: Option<bool>,
}

/// `x(x+1)(2x+1) = 2x³ + 3x² + x`.
pub fn cubic() -> RationalPolynomial {
    RationalPolynomial::from_integers([0, 1, 3, 2])
}

#[allow(clippy::needless_range_loop)]
pub fn moser_polynomial(n: usize, table: &BernoulliTable) -> Result<MoserPolynomial> {
    if n == 0 {
        return Err(Error::domain("moser_polynomial needs n >= 1"));
    }
    let row = binomial_row(n as u64 + 1);
    let mut r = Vec::with_capacity(n);
    for j in 1..=n {
        let d = table.require(j)?.denom();
        r.push(d / d.gcd(&row[j]));
    }
    let lcm = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x));
    let l = BigInt::from(n + 1) * &lcm;
    let scaled = faulhaber(n, table)?.scale(&Rational::from_integer(l.clone()));
    let content = scaled
        .content()
        .ok_or_else(|| Error::violation(format!("L_{n} P_{n} has a non-integer coefficient")))?;
    let q = if content.is_one() {
        scaled
    } else {
        scaled.scale(&Rational::new(BigInt::one(), content.clone()))
    };
    let cubic_factor = (n % 2 == 0).then(|| q.div_rem(&cubic()).1.is_zero());
    Ok(MoserPolynomial {
        n,
        q,
        l,
        r,
        content,
        cubic_factor,
    })
}

/// For even `n`: `Q_n(m+1) ≡ L_n (mod m)`.
pub fn moser_l_divisibility(n: usize, m: u64, table: &BernoulliTable) -> Result<bool> {
    if n % 2 == 1 {
        return Err(Error::domain(format!("n must be even, got {n}")));
    }
    if m == 0 {
        return Err(Error::domain("m must be positive"));
    }
    let mp = moser_polynomial(n, table)?;
    let value = mp.q.eval_integer(&BigInt::from(m + 1));
    if !value.is_integer() {
        return Err(Error::violation(format!("Q_{n}({}) is not an integer", m + 1)));
    }
    let m = BigInt::from(m);
    Ok(modulo(&(value.to_integer() - &mp.l), &m).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let t = BernoulliTable::up_to(30);
        let q2 = moser_polynomial(2, &t).unwrap();
        assert_eq!(q2.q, cubic());
        assert_eq!(q2.l, BigInt::from(6));
        assert_eq!(q2.r, [BigInt::from(2), BigInt::from(2)]);
        assert_eq!(q2.cubic_factor, Some(true));

        let q1 = moser_polynomial(1, &t).unwrap();
        assert_eq!(q1.q, RationalPolynomial::from_integers([0, 1, 1]));
        assert_eq!(q1.l, BigInt::from(2));
        assert_eq!(q1.cubic_factor, None);

        let q4 = moser_polynomial(4, &t).unwrap();
        assert!(q4.content.is_one());
        assert_eq!(q4.q, RationalPolynomial::from_integers([0, -1, 0, 10, 15, 6]));
    }

    #[test]
    fn content_one_and_cubic_factor() {
        let t = BernoulliTable::up_to(42);
        for n in 1..=40 {
            let mp = moser_polynomial(n, &t).unwrap();
            assert!(mp.content.is_one(), "content of Q_{n} is {}", mp.content);
            assert!(mp.q.integer_coefficients().is_some());
            if n % 2 == 0 {
                assert_eq!(mp.cubic_factor, Some(true), "Q_{n}");
            }
            // Q_n(1) = L_n since P_n(1) = 1.
            assert_eq!(mp.q.eval_integer(&BigInt::one()), Rational::from_integer(mp.l.clone()));
        }
    }

    #[test]
    fn l_divisibility() {
        let t = BernoulliTable::up_to(30);
        assert!(moser_l_divisibility(2, 5, &t).unwrap());
        assert!(moser_l_divisibility(2, 1, &t).unwrap());
        assert!(moser_l_divisibility(4, 7, &t).unwrap());
        assert!(moser_l_divisibility(3, 7, &t).is_err());
        for n in (2..=20).step_by(2) {
            for m in 1..=60 {
                assert!(moser_l_divisibility(n, m, &t).unwrap(), "({n}, {m})");
            }
        }
    }
}
