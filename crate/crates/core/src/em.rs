//! Necessary conditions on solutions of the Erdős–Moser equation
//! `S_n(m) = (m+1)^n` and its generalization `S_n(m) = a(m+1)^n`.
//!
//! Every check yields a [`ConstraintCertificate`]. A `Fail` means `(m, n)`
//! cannot be a nontrivial solution; `NotApplicable` means the hypothesis of
//! the constraint is not met or cannot be decided from what is known of `n`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::arith::{
    factorize, factorize_u64, inv_mod_u64, is_prime_u64, mod_pow_u64, multiplicative_order,
    padic_order_u64, FactorConfig, Factorization,
};
use crate::egyptian::is_solution;
use crate::power_sums::{power_sum, power_sum_mod};
use crate::{Error, Result};

/// `2^8 · 3^5`, a known divisor of `n` in any nontrivial solution.
pub const MOREE_DIVISOR: u64 = 62_208;

/// Largest `m` accepted; keeps `2m + 3` and `m(m+1)` comfortably in range.
pub const MAX_M: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EmMode {
    /// `S_n(m) = (m+1)^n`.
    Eme,
    /// `S_n(m) = a(m+1)^n` for some positive integer `a`.
    Geme,
}

/// What is known about the exponent `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NSpec {
    Exact(u64),
    /// Only a guaranteed divisor of `n` is known (`n` is then even and at
    /// least the divisor).
    Profile(u64),
}

impl Default for NSpec {
    fn default() -> Self {
        NSpec::Profile(MOREE_DIVISOR)
    }
}

impl NSpec {
    /// `Some(true)` if `k | n` certainly, `Some(false)` if certainly not,
    /// `None` if undecidable.
    fn divisible_by(self, k: u64) -> Option<bool> {
        match self {
            NSpec::Exact(n) => Some(n % k == 0),
            NSpec::Profile(d) if d % k == 0 => Some(true),
            NSpec::Profile(_) => None,
        }
    }

    fn exact(self) -> Option<u64> {
        match self {
            NSpec::Exact(n) => Some(n),
            NSpec::Profile(_) => None,
        }
    }

    /// Everything derived for nontrivial solutions assumes `n ≥ 2`.
    fn trivial(self) -> bool {
        self == NSpec::Exact(1)
    }
}

impl fmt::Display for NSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NSpec::Exact(n) => write!(f, "n = {n}"),
            NSpec::Profile(d) => write!(f, "{d} | n"),
        }
    }
}

/// A query against one of the two equations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmQuery {
    pub m: u64,
    pub n: Option<u64>,
    pub a: u64,
    pub mode: EmMode,
}

impl EmQuery {
    pub fn new(m: u64, n: Option<u64>, a: u64, mode: EmMode) -> Result<Self> {
        if m == 0 || a == 0 || n == Some(0) {
            return Err(Error::domain("m, n and a must be positive"));
        }
        if mode == EmMode::Eme && a != 1 {
            return Err(Error::domain("a = 1 in the Erdős–Moser equation"));
        }
        Ok(EmQuery { m, n, a, mode })
    }

    pub fn n_spec(&self) -> NSpec {
        self.n.map_or_else(NSpec::default, NSpec::Exact)
    }
}

/// Which square-free condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quantity {
    M,
    HalfMPlus2,
    TwoMPlus1,
    TwoMPlus3,
}

impl Quantity {
    fn label(self) -> &'static str {
        match self {
            Quantity::M => "m",
            Quantity::HalfMPlus2 => "(m+2)/2",
            Quantity::TwoMPlus1 => "2m+1",
            Quantity::TwoMPlus3 => "2m+3",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintId {
    /// `m` is even.
    MEven,
    /// `n` is even.
    NEven,
    /// `m ≡ 0, 4 (mod 6)`.
    Mod6,
    /// `m ≡ 6, 10 (mod 18)`.
    Mod18,
    /// `m ≡ 4 (mod 5)` forces `n ≡ 2 (mod 4)`.
    Mod5,
    SquareFree(Quantity),
    /// `3n ≥ 2m`.
    MoserBound,
    /// `p | m+1` forces `p − 1 ∤ n`.
    PrimeMPlus1(u64),
    /// `p | m` forces `p − 1 | n` and `p² | m + p`.
    PrimeM(u64),
    /// `p | m − (p−1)/2` forces `p − 1 | n` and `m ≡ −p − 2^{−1} (mod p²)`.
    PrimeHalf(u64),
    /// `(m − 1, 2^n − 1 − X)` solves the Egyptian-fraction congruence.
    RabbitEgyptian,
    /// `ord_p(2) | n` and `n ≥ p − 1` for `p | m − 1`.
    RabbitOrder(u64),
    /// `p^{e−1} | 2^n − 1` where `e = v_p(m − 1)`.
    RabbitPower(u64),
    /// `p − 1 | n` forces `v_p(m − 1) ≥ v_p(2^n − 1) + 1`.
    RabbitLift(u64),
}

impl ConstraintId {
    /// Name without the prime parameter, for histograms.
    pub fn kind(&self) -> &'static str {
        match self {
            ConstraintId::MEven => "m-even",
            ConstraintId::NEven => "n-even",
            ConstraintId::Mod6 => "mod-6",
            ConstraintId::Mod18 => "mod-18",
            ConstraintId::Mod5 => "mod-5",
            ConstraintId::SquareFree(Quantity::M) => "square-free(m)",
            ConstraintId::SquareFree(Quantity::HalfMPlus2) => "square-free((m+2)/2)",
            ConstraintId::SquareFree(Quantity::TwoMPlus1) => "square-free(2m+1)",
            ConstraintId::SquareFree(Quantity::TwoMPlus3) => "square-free(2m+3)",
            ConstraintId::MoserBound => "moser-bound",
            ConstraintId::PrimeMPlus1(_) => "prime-m+1",
            ConstraintId::PrimeM(_) => "prime-m",
            ConstraintId::PrimeHalf(_) => "prime-half",
            ConstraintId::RabbitEgyptian => "rabbit-egyptian",
            ConstraintId::RabbitOrder(_) => "rabbit-order",
            ConstraintId::RabbitPower(_) => "rabbit-power",
            ConstraintId::RabbitLift(_) => "rabbit-lift",
        }
    }

    pub fn prime(&self) -> Option<u64> {
        match *self {
            ConstraintId::PrimeMPlus1(p)
            | ConstraintId::PrimeM(p)
            | ConstraintId::PrimeHalf(p)
            | ConstraintId::RabbitOrder(p)
            | ConstraintId::RabbitPower(p)
            | ConstraintId::RabbitLift(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for ConstraintId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.prime() {
            Some(p) => write!(f, "{}[p={p}]", self.kind()),
            None => f.write_str(self.kind()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "NOT_APPLICABLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstraintCertificate {
    pub id: ConstraintId,
    pub status: Status,
    pub witness: String,
}

impl ConstraintCertificate {
    fn new(id: ConstraintId, status: Status, witness: impl Into<String>) -> Self {
        ConstraintCertificate { id, status, witness: witness.into() }
    }

    fn check(id: ConstraintId, ok: bool, witness: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self::new(id, status, witness)
    }

    fn na(id: ConstraintId, why: impl Into<String>) -> Self {
        Self::new(id, Status::NotApplicable, why)
    }
}

impl fmt::Display for ConstraintCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.id, self.status, self.witness)
    }
}

/// Combine partial verdicts: any failure fails, any undecided part leaves
/// the whole undecided, otherwise it passes.
fn combine(parts: &[Option<bool>]) -> Status {
    if parts.contains(&Some(false)) {
        Status::Fail
    } else if parts.contains(&None) {
        Status::NotApplicable
    } else {
        Status::Pass
    }
}

fn check_m(m: u64) -> Result<()> {
    if m == 0 || m > MAX_M {
        return Err(Error::domain(format!("m must lie in [1, {MAX_M}]")));
    }
    Ok(())
}

/// `S_1(2a) = a(2a + 1)`, the trivial family of the generalized equation.
pub fn verify_trivial(a: u64) -> bool {
    let m = BigInt::from(a) * 2u32;
    let s1 = &m * (&m + 1u32) / 2u32;
    s1 == BigInt::from(a) * (m + 1u32)
}

/// Exact test of `S_n(m) = a(m+1)^n` for `m ≤ 10^6`, `n ≤ 1000`.
pub fn direct_equation_check(m: u64, n: u64, a: u64) -> Result<bool> {
    if m == 0 || n == 0 || a == 0 {
        return Err(Error::domain("m, n and a must be positive"));
    }
    if m > 1_000_000 || n > 1000 {
        return Err(Error::domain("direct check limited to m <= 10^6, n <= 1000"));
    }
    let rhs = BigInt::from(a) * num_traits::pow(BigInt::from(m + 1), n as usize);
    Ok(power_sum(m, n as u32)? == rhs)
}

/// `S_n(m) = a(m+1)^n`, compared modulo two large moduli before the exact
/// test.
pub fn equation_holds(m: u64, n: u64, a: u64) -> Result<bool> {
    const P1: u64 = (1 << 61) - 1;
    const P2: u64 = (1 << 62) - 57;
    for p in [P1, P2] {
        let rhs = mod_pow_u64((m + 1) % p, n, p);
        let rhs = ((a % p) as u128 * rhs as u128 % p as u128) as u64;
        if power_sum_mod(m, n, p) != rhs {
            return Ok(false);
        }
    }
    direct_equation_check(m, n, a)
}

fn square_free_certificate(q: Quantity, value: &BigInt, cfg: &FactorConfig) -> ConstraintCertificate {
    let id = ConstraintId::SquareFree(q);
    match factorize(value, cfg) {
        Ok(f) => {
            let witness = match f.iter().find(|(_, e)| *e >= 2) {
                Some((p, _)) => format!("{} = {value} is divisible by {p}^2", q.label()),
                None => format!("{} = {value} is square-free", q.label()),
            };
            ConstraintCertificate::check(id, f.is_square_free(), witness)
        }
        Err(e) => ConstraintCertificate::na(id, format!("{}: {e}", q.label())),
    }
}

/// Residue and square-freeness conditions on `m` alone, valid for any
/// nontrivial solution.
///
/// Both modes: `m` even and `m ≡ 0, 4 (mod 6)`. The Erdős–Moser equation
/// adds `m ≡ 6, 10 (mod 18)` and square-freeness of `m`, `(m+2)/2`, `2m+1`
/// and `2m+3`. A factorization that exceeds the effort cap turns only the
/// affected check into `NotApplicable`.
pub fn em_residue_constraints(m: u64, mode: EmMode, cfg: &FactorConfig) -> Result<Vec<ConstraintCertificate>> {
    check_m(m)?;
    let mut out = Vec::new();
    out.push(ConstraintCertificate::check(
        ConstraintId::MEven,
        m % 2 == 0,
        format!("m ≡ {} (mod 2)", m % 2),
    ));
    out.push(ConstraintCertificate::check(
        ConstraintId::Mod6,
        matches!(m % 6, 0 | 4),
        format!("m ≡ {} (mod 6)", m % 6),
    ));
    if mode == EmMode::Eme {
        out.push(ConstraintCertificate::check(
            ConstraintId::Mod18,
            matches!(m % 18, 6 | 10),
            format!("m ≡ {} (mod 18)", m % 18),
        ));
        let mb = BigInt::from(m);
        out.push(square_free_certificate(Quantity::M, &mb, cfg));
        if m % 2 == 0 {
            out.push(square_free_certificate(Quantity::HalfMPlus2, &BigInt::from(m / 2 + 1), cfg));
        } else {
            out.push(ConstraintCertificate::na(
                ConstraintId::SquareFree(Quantity::HalfMPlus2),
                "m is odd",
            ));
        }
        out.push(square_free_certificate(Quantity::TwoMPlus1, &(&mb * 2u32 + 1u32), cfg));
        out.push(square_free_certificate(Quantity::TwoMPlus3, &(&mb * 2u32 + 3u32), cfg));
    }
    Ok(out)
}

/// The single prime-`p` condition that applies to `(m, p)`, for an odd
/// prime `p`:
///
/// * `p | m + 1` (both modes): `p − 1 ∤ n`;
/// * `p | m` (Erdős–Moser only): `p − 1 | n` and `p² | m + p`;
/// * `p | m − (p−1)/2` (Erdős–Moser only): `p − 1 | n` and
///   `m ≡ −p − 2^{−1} (mod p²)`, with `2^{−1}` taken modulo `p²`; only for
///   even `n`.
///
/// These residues are distinct, so at most one clause applies; otherwise
/// the certificate is `NotApplicable`.
pub fn em_prime_constraints(m: u64, n: NSpec, p: u64, mode: EmMode) -> Result<ConstraintCertificate> {
    check_m(m)?;
    if p < 3 || !is_prime_u64(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    let r = m % p;
    let half = (p - 1) / 2;
    let p2 = p.checked_mul(p).ok_or_else(|| Error::domain("p^2 exceeds 64 bits"))?;
    let pm1_divides = n.divisible_by(p - 1);
    let show = |d: Option<bool>| match d {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "undecided",
    };
    if r == p - 1 {
        let id = ConstraintId::PrimeMPlus1(p);
        let status = combine(&[pm1_divides.map(|d| !d)]);
        let witness = format!("{p} | m+1; {} | n {} under {n}", p - 1, show(pm1_divides));
        return Ok(ConstraintCertificate::new(id, status, witness));
    }
    if mode == EmMode::Geme {
        return Ok(ConstraintCertificate::na(
            ConstraintId::PrimeMPlus1(p),
            format!("{p} ∤ m+1"),
        ));
    }
    if r == 0 {
        let id = ConstraintId::PrimeM(p);
        let lifted = (m % p2 + p) % p2 == 0;
        let status = combine(&[pm1_divides, Some(lifted)]);
        let witness = format!(
            "{p} | m; {} | n {} under {n}; m + p ≡ {} (mod {p2})",
            p - 1,
            show(pm1_divides),
            (m % p2 + p) % p2
        );
        return Ok(ConstraintCertificate::new(id, status, witness));
    }
    if r == half {
        let id = ConstraintId::PrimeHalf(p);
        if n.divisible_by(2) == Some(false) {
            // The derivation needs the even-n congruence; (m, n) = (2, 1)
            // with p = 5 is a genuine solution that would otherwise fail.
            return Ok(ConstraintCertificate::na(id, format!("{p} | m − {half} but n is odd")));
        }
        let inv2 = inv_mod_u64(2, p2).expect("p is odd");
        let target = (2 * p2 - p - inv2) % p2;
        let lifted = m % p2 == target;
        let status = combine(&[pm1_divides, Some(lifted)]);
        let witness = format!(
            "{p} | m − {half}; {} | n {} under {n}; m ≡ {} (mod {p2}), need −p − 1/2 ≡ {target} with 1/2 = {inv2} mod {p2}",
            p - 1,
            show(pm1_divides),
            m % p2
        );
        return Ok(ConstraintCertificate::new(id, status, witness));
    }
    Ok(ConstraintCertificate::na(
        ConstraintId::PrimeM(p),
        format!("{p} divides none of m, m+1, m − {half}"),
    ))
}

/// `v_p(2^k − 1)` for an odd prime `p`, by lifting the exponent:
/// `v_p(2^{t·ord} − 1) = v_p(2^{ord} − 1) + v_p(t)`.
fn v_p_mersenne(p: u64, k: u64) -> Result<u64> {
    let ord = multiplicative_order(2, p)?;
    if k % ord != 0 {
        return Ok(0);
    }
    let mut base = 1;
    let mut pk = p;
    while let Some(next) = pk.checked_mul(p) {
        if mod_pow_u64(2, ord, next) != 1 {
            break;
        }
        base += 1;
        pk = next;
    }
    Ok(base + padic_order_u64(k / ord, p).finite().unwrap_or(0))
}

/// Conditions from the Egyptian-fraction solution `(m − 1, 2^n − 1 − X)`,
/// where `X = Σ_{p | m−1, p−1 ∤ n} (m−1)/p`, for a hypothetical nontrivial
/// Erdős–Moser solution with `m ≥ 3`.
///
/// For every odd prime `p | m − 1` with `e = v_p(m − 1)`:
/// order: `ord_p(2) | n` and `n ≥ p − 1` (the value of `k` in
/// `n = p − 1 + k·ord_p(2)` is reported); power: `p^{e−1} | 2^n − 1`;
/// lift: if `p − 1 | n`, then `v_p(m − 1) ≥ v_p(2^n − 1) + 1`.
/// Under a divisor profile `D | n`, `v_p(2^D − 1)` is a lower bound for
/// `v_p(2^n − 1)` and `n ≥ max(D, ⌈2m/3⌉)`. The prime 2 gets a single
/// `NotApplicable` entry: `ord_2(2)` is undefined.
pub fn rabbit_certificate(m: u64, n: NSpec, cfg: &FactorConfig) -> Result<Vec<ConstraintCertificate>> {
    check_m(m)?;
    if m < 3 {
        return Err(Error::domain("rabbit_certificate needs m >= 3"));
    }
    let m1 = m - 1;
    let f: Factorization = factorize_u64(m1, cfg)?;
    let mut out = Vec::new();

    let id = ConstraintId::RabbitEgyptian;
    let undecided: Vec<u64> = f
        .iter_u64()
        .filter(|(p, _)| n.divisible_by(p - 1).is_none())
        .map(|(p, _)| p)
        .collect();
    out.push(match n.exact() {
        Some(nn) if undecided.is_empty() => {
            let x = f
                .iter_u64()
                .filter(|(p, _)| nn % (p - 1) != 0)
                .fold(0u128, |acc, (p, _)| acc + (m1 / p) as u128);
            let two_n = mod_pow_u64(2, nn, m1);
            let d = BigInt::from(two_n) - 1u32 - BigInt::from(x);
            ConstraintCertificate::check(
                id,
                is_solution(&f, &d),
                format!("X = {x}, d ≡ {d} (mod {m1})"),
            )
        }
        _ => ConstraintCertificate::na(id, format!("2^n mod {m1} unknown under {n}")),
    });

    let n_lower = match n {
        NSpec::Exact(nn) => nn,
        NSpec::Profile(d) => d.max((2 * m).div_ceil(3)),
    };
    for (p, e) in f.iter_u64() {
        if p == 2 {
            out.push(ConstraintCertificate::na(
                ConstraintId::RabbitOrder(2),
                "p = 2: ord_2(2) is undefined",
            ));
            continue;
        }
        let ord = multiplicative_order(2, p)?;
        let ord_divides = n.divisible_by(ord);
        let big_enough = n_lower >= p - 1;
        let k = n.exact().filter(|&nn| nn >= p - 1 && (nn - (p - 1)) % ord == 0).map(|nn| (nn - (p - 1)) / ord);
        let witness = match k {
            Some(k) => format!("ord_{p}(2) = {ord}; n = {} + {k}·{ord}", p - 1),
            None => format!("ord_{p}(2) = {ord}; n ≥ {n_lower} under {n}"),
        };
        out.push(ConstraintCertificate::new(
            ConstraintId::RabbitOrder(p),
            combine(&[ord_divides, Some(big_enough)]),
            witness,
        ));

        let id = ConstraintId::RabbitPower(p);
        if e == 1 {
            out.push(ConstraintCertificate::check(id, true, "e = 1, p^0 | 2^n − 1"));
        } else {
            let pe1 = p.pow(e - 1);
            let ord_e = multiplicative_order(2, pe1)?;
            let decided = n.divisible_by(ord_e);
            out.push(ConstraintCertificate::new(
                id,
                combine(&[decided]),
                format!("e = {e}; {p}^{} | 2^n − 1 iff ord = {ord_e} | n", e - 1),
            ));
        }

        let id = ConstraintId::RabbitLift(p);
        match n.divisible_by(p - 1) {
            Some(true) => {
                let known = match n {
                    NSpec::Exact(nn) | NSpec::Profile(nn) => nn,
                };
                let v = v_p_mersenne(p, known)?;
                let ok = u64::from(e) > v;
                let note = if n.exact().is_some() { "" } else { " (at least)" };
                out.push(ConstraintCertificate::check(
                    id,
                    ok,
                    format!("v_{p}(2^n − 1) = {v}{note}; need {p}^{} | m − 1, have e = {e}", v + 1),
                ));
            }
            Some(false) => out.push(ConstraintCertificate::na(id, format!("{} ∤ n", p - 1))),
            None => out.push(ConstraintCertificate::na(id, format!("{} | n undecided under {n}", p - 1))),
        }
    }
    Ok(out)
}

/// Every condition known for a hypothetical nontrivial solution.
///
/// With `n = 1` (the trivial family of the generalized equation) the
/// nontrivial-only conditions report `NotApplicable`; the prime condition
/// `p | m + 1 ⇒ p − 1 ∤ n` is evaluated regardless because it holds for
/// every solution.
pub fn certify(m: u64, n: NSpec, mode: EmMode, cfg: &FactorConfig) -> Result<Vec<ConstraintCertificate>> {
    check_m(m)?;
    if let NSpec::Exact(0) | NSpec::Profile(0) = n {
        return Err(Error::domain("n and its divisor profile must be positive"));
    }
    let trivial = n.trivial();
    let mut out = Vec::new();
    let nontrivial = |c: ConstraintCertificate, out: &mut Vec<ConstraintCertificate>| {
        if trivial {
            out.push(ConstraintCertificate::na(c.id, "n = 1: trivial family"));
        } else {
            out.push(c);
        }
    };

    for c in em_residue_constraints(m, mode, cfg)? {
        nontrivial(c, &mut out);
    }
    let n_even = n.divisible_by(2);
    nontrivial(
        ConstraintCertificate::new(ConstraintId::NEven, combine(&[n_even]), format!("{n}")),
        &mut out,
    );
    let mod5 = if m % 5 == 4 {
        let n2mod4 = match n {
            NSpec::Exact(nn) => Some(nn % 4 == 2),
            NSpec::Profile(d) if d % 4 == 0 => Some(false),
            NSpec::Profile(_) => None,
        };
        ConstraintCertificate::new(ConstraintId::Mod5, combine(&[n2mod4]), format!("m ≡ 4 (mod 5), {n}"))
    } else {
        ConstraintCertificate::na(ConstraintId::Mod5, format!("m ≡ {} (mod 5)", m % 5))
    };
    nontrivial(mod5, &mut out);
    if mode == EmMode::Eme {
        let c = match n.exact() {
            Some(nn) => ConstraintCertificate::check(
                ConstraintId::MoserBound,
                3 * u128::from(nn) >= 2 * u128::from(m),
                format!("3n = {}, 2m = {}", 3 * u128::from(nn), 2 * u128::from(m)),
            ),
            None => ConstraintCertificate::na(ConstraintId::MoserBound, "n not explicit"),
        };
        nontrivial(c, &mut out);
    }

    // An odd prime p meets one of the prime clauses exactly when it divides
    // m(m+1)(2m+1).
    let mut primes: Vec<u64> = Vec::new();
    for q in [BigInt::from(m), BigInt::from(m) + 1u32, BigInt::from(m) * 2u32 + 1u32] {
        match factorize(&q, cfg) {
            Ok(f) => primes.extend(f.iter_u64().map(|(p, _)| p).filter(|&p| p > 2)),
            Err(e) if e.is_resource() => out.push(ConstraintCertificate::na(
                ConstraintId::PrimeM(0),
                format!("prime conditions incomplete: {e}"),
            )),
            Err(e) => return Err(e),
        }
    }
    primes.sort_unstable();
    primes.dedup();
    for p in primes {
        let c = em_prime_constraints(m, n, p, mode)?;
        if matches!(c.id, ConstraintId::PrimeMPlus1(_)) {
            out.push(c);
        } else {
            nontrivial(c, &mut out);
        }
    }

    if mode == EmMode::Eme && m >= 3 {
        match rabbit_certificate(m, n, cfg) {
            Ok(cs) => {
                for c in cs {
                    nontrivial(c, &mut out);
                }
            }
            Err(e) if e.is_resource() => out.push(ConstraintCertificate::na(
                ConstraintId::RabbitEgyptian,
                format!("m − 1 not factored: {e}"),
            )),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Survivors and failure counts of a sieve over a range of `m`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SieveSummary {
    pub examined: u64,
    pub survivors: Vec<u64>,
    /// For each constraint kind, the number of `m` it eliminated.
    pub histogram: BTreeMap<&'static str, u64>,
}

impl SieveSummary {
    /// Merge the summary of the next adjacent range.
    pub fn merge(&mut self, other: SieveSummary) {
        self.examined += other.examined;
        self.survivors.extend(other.survivors);
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
    }
}

/// Apply the `m`-only conditions (and, given a profile or explicit `n`, the
/// `n`-dependent ones) to every `m` in `[lo, hi]`. Deterministic.
pub fn sieve_range(
    lo: u64,
    hi: u64,
    n: Option<NSpec>,
    mode: EmMode,
    cfg: &FactorConfig,
) -> Result<SieveSummary> {
    if lo == 0 || lo > hi {
        return Err(Error::domain("sieve_range needs 1 <= lo <= hi"));
    }
    check_m(hi)?;
    let mut summary = SieveSummary::default();
    for m in lo..=hi {
        summary.examined += 1;
        let certs = match n {
            None => em_residue_constraints(m, mode, cfg)?,
            Some(spec) => certify(m, spec, mode, cfg)?,
        };
        let mut kinds: Vec<&'static str> = certs
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.id.kind())
            .collect();
        if kinds.is_empty() {
            summary.survivors.push(m);
        }
        kinds.dedup();
        kinds.sort_unstable();
        kinds.dedup();
        for k in kinds {
            *summary.histogram.entry(k).or_default() += 1;
        }
    }
    Ok(summary)
}
