use alloc::format;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{classify_factored, describe, Classification};
use crate::arith::{factorize, is_prime, FactorConfig, Factorization};
use crate::{Error, Result};

/// Ways to build a new Giuga or primary pseudoperfect number from `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenerationRule {
    /// `n(n+1)` with `n+1` an odd prime; PPP ⟺ PPP.
    PppUp,
    /// `n(n−1)` with `n−1` prime; PPP ⟺ strong Giuga.
    GiugaDown,
    /// `n(n+F)(n+G)` with `n²+1 = FG`, `n+F` and `n+G` prime; PPP ⟺ PPP.
    PppSplit { f: BigInt, g: BigInt },
    /// `n(n+F)(n+G)` with `n²−1 = FG`, `n+F` and `n+G` prime; PPP ⟺ strong Giuga.
    GiugaSplit { f: BigInt, g: BigInt },
}

impl GenerationRule {
    /// The classification the output has exactly when the input is primary
    /// pseudoperfect.
    pub fn target(&self) -> Classification {
        match self {
            GenerationRule::PppUp | GenerationRule::PppSplit { .. } => {
                Classification::PRIMARY_PSEUDOPERFECT
            }
            GenerationRule::GiugaDown | GenerationRule::GiugaSplit { .. } => {
                Classification::STRONG_GIUGA
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generated {
    pub value: BigInt,
    pub factorization: Factorization,
    pub input: Classification,
    pub output: Classification,
}

fn require_prime(x: &BigInt, what: &str) -> Result<()> {
    if is_prime(x) {
        Ok(())
    } else {
        Err(Error::hypothesis(format!("{what} = {x} is not prime")))
    }
}

/// Apply `rule` to `n`, factoring `n` first.
pub fn generate(n: &BigInt, rule: &GenerationRule, cfg: &FactorConfig) -> Result<Generated> {
    generate_factored(&factorize(n, cfg)?, rule)
}

/// Apply `rule` to the integer with factorization `f`. The new primes are
/// appended, so no further factoring is needed. The input is PPP exactly
/// when the output carries the rule's target classification; a mismatch is
/// an [`Error::Violation`].
pub fn generate_factored(f: &Factorization, rule: &GenerationRule) -> Result<Generated> {
    let n = f.value();
    if n <= BigInt::one() {
        return Err(Error::hypothesis("n must exceed 1"));
    }
    let new_primes = match rule {
        GenerationRule::PppUp => {
            let q = &n + 1u32;
            require_prime(&q, "n+1")?;
            if q == BigInt::from(2) {
                return Err(Error::hypothesis("n+1 must be odd"));
            }
            alloc::vec![q]
        }
        GenerationRule::GiugaDown => {
            let q = &n - 1u32;
            require_prime(&q, "n-1")?;
            alloc::vec![q]
        }
        GenerationRule::PppSplit { f: a, g: b } | GenerationRule::GiugaSplit { f: a, g: b } => {
            let plus = matches!(rule, GenerationRule::PppSplit { .. });
            if !a.is_positive() || !b.is_positive() {
                return Err(Error::hypothesis("F and G must be positive"));
            }
            let target = if plus { &n * &n + 1u32 } else { &n * &n - 1u32 };
            if a * b != target {
                let sign = if plus { "+" } else { "-" };
                return Err(Error::hypothesis(format!("F·G = {} differs from n^2 {sign} 1 = {target}", a * b)));
            }
            let (p, q) = (&n + a, &n + b);
            require_prime(&p, "n+F")?;
            require_prime(&q, "n+G")?;
            if p == q {
                return Err(Error::hypothesis("n+F and n+G coincide"));
            }
            alloc::vec![p, q]
        }
    };
    let factorization = f.merge(&Factorization::from_factors(
        new_primes.into_iter().map(|p| (p, 1)),
    )?);
    let value = factorization.value();
    let input = classify_factored(f);
    let output = classify_factored(&factorization);
    let target = rule.target();
    if input.contains(Classification::PRIMARY_PSEUDOPERFECT) != output.contains(target) {
        return Err(Error::violation(format!(
            "{rule:?}: input {} but output {}",
            describe(&n, input),
            describe(&value, output)
        )));
    }
    Ok(Generated {
        value,
        factorization,
        input,
        output,
    })
}
