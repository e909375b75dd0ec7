use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// Polynomial over the rationals, coefficients in ascending degree. The
/// highest stored coefficient is nonzero unless the polynomial is zero (then
/// no coefficients are stored).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Rational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        RationalPolynomial { coeffs: Vec::new() }
    }

    pub fn from_integers<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(coeffs.into_iter().map(|c| Rational::from_integer(c.into())).collect())
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_integer(&self, x: &BigInt) -> Rational {
        self.eval(&Rational::from_integer(x.clone()))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// The coefficients as integers, if they all are.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// gcd of the coefficients of an integer polynomial (`None` otherwise);
    /// zero for the zero polynomial.
    pub fn content(&self) -> Option<BigInt> {
        let ints = self.integer_coefficients()?;
        Some(ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c)))
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    /// Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if sd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = alloc::vec![Rational::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = &rem[i + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coefficient(i) - rhs.coefficient(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = alloc::vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one() && i > 0;
            if !unit {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_integers(c.iter().copied())
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[0, 1, 3, 2]).to_string(), "2x^3 + 3x^2 + x");
        assert_eq!(poly(&[-1, 0, -1]).to_string(), "-x^2 - 1");
        assert_eq!(poly(&[]).to_string(), "0");
        let half = RationalPolynomial::new(alloc::vec![Rational::new(1.into(), 2.into())]);
        assert_eq!(half.to_string(), "(1/2)");
    }

    #[test]
    fn trailing_zeros_dropped() {
        assert_eq!(poly(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(poly(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_example() {
        // (2x^3 + 3x^2 + x) / (x + 1) = 2x^2 + x
        let (q, r) = poly(&[0, 1, 3, 2]).div_rem(&poly(&[1, 1]));
        assert_eq!(q, poly(&[0, 1, 2]));
        assert!(r.is_zero());
        assert_eq!(poly(&[6, 4, 2]).content(), Some(2.into()));
    }

    proptest! {
        #[test]
        fn div_rem_reconstructs(a in proptest::collection::vec(-50i64..50, 0..8),
                                b in proptest::collection::vec(-50i64..50, 1..5)) {
            let a = poly(&a);
            let b = poly(&b);
            prop_assume!(!b.is_zero());
            let (q, r) = a.div_rem(&b);
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
        }

        #[test]
        fn eval_is_a_ring_map(a in proptest::collection::vec(-20i64..20, 0..6),
                              b in proptest::collection::vec(-20i64..20, 0..6),
                              x in -30i64..30) {
            let (a, b) = (poly(&a), poly(&b));
            let x = BigInt::from(x);
            prop_assert_eq!((&a * &b).eval_integer(&x), a.eval_integer(&x) * b.eval_integer(&x));
            prop_assert_eq!((&a - &b).eval_integer(&x), a.eval_integer(&x) - b.eval_integer(&x));
        }
    }
}
