//! Exact arithmetic for power sums, Egyptian-fraction numbers (Giuga and
//! primary pseudoperfect), Bernoulli numbers and Erdős–Moser constraints.
//!
//! Everything in this crate is exact and allocation-backed; there is no
//! floating point anywhere. The crate is `no_std` and only needs `alloc`.
//! File formats, the command line and parallel drivers live in the `mf`
//! companion crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod bernoulli;
pub mod egyptian;
pub mod em;
mod error;
pub mod power_sums;

pub use arith::{Factorization, FactorConfig, Integer, PAdicOrder, Rational};
pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;
