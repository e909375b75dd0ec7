//! Published Giuga and primary pseudoperfect numbers with their
//! factorizations.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::Factorization;
use crate::Result;

/// Primary pseudoperfect numbers with `k ≤ 8` prime factors.
pub const PRIMARY_PSEUDOPERFECT: [&str; 8] = [
    "2",
    "6",
    "42",
    "1806",
    "47058",
    "2214502422",
    "52495396602",
    "8490421583559688410706771261086",
];

/// The first strong Giuga numbers.
pub const STRONG_GIUGA: [&str; 7] = [
    "30",
    "858",
    "1722",
    "66198",
    "2214408306",
    "24423128562",
    "432749205173838",
];

pub const N6: &str = "2214502422";
pub const N6_PRIMES: [&str; 6] = ["2", "3", "11", "23", "31", "47059"];

/// `n_6^2 + 1 = F⁺ G⁺`.
pub const N6_PLUS_F: &str = "2839805";
pub const N6_PLUS_G: &str = "1726886521097";
/// `n_6^2 − 1 = F⁻ G⁻`.
pub const N6_MINUS_F: &str = "45193927";
pub const N6_MINUS_G: &str = "108510618629";

pub const N8: &str = "8490421583559688410706771261086";
pub const N8_PRIMES: [&str; 8] = [
    "2",
    "3",
    "11",
    "23",
    "31",
    "47059",
    "2217342227",
    "1729101023519",
];

/// `n_6 (n_6 + F⁻)(n_6 + G⁻)`.
pub const N6_GIUGA: &str = "554079914617070801288578559178";

/// `n_8^2 − 1 = F G` giving Girgensohn's strong Giuga number as
/// `n_8 (n_8 + F)(n_8 + G)`.
pub const N8_MINUS_F: &str = "1237634702131087783258034935";
pub const N8_MINUS_G: &str = "58245990147536174435130592205295317";

/// Girgensohn's 97-digit strong Giuga number.
pub const GIRGENSOHN: &str = "4200017949707747062038711509670656632404195753751630609228764416142557211582098432545190323474818";
pub const GIRGENSOHN_PRIMES: [&str; 10] = [
    "2",
    "3",
    "11",
    "23",
    "31",
    "47059",
    "2217342227",
    "1729101023519",
    "58254480569119734123541298976556403",
    "8491659218261819498490029296021",
];

pub fn int(s: &str) -> BigInt {
    s.parse().expect("fixture is a decimal integer")
}

/// Square-free factorization from a list of primes; each is checked.
pub fn square_free(primes: &[&str]) -> Result<Factorization> {
    Factorization::from_factors(primes.iter().map(|p| (int(p), 1)).collect::<Vec<_>>())
}
