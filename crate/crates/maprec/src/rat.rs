//! Exact rational scalars.
//!
//! Counts and series coefficients are arbitrary-precision rationals. The
//! representation (lowest terms, positive denominator) is maintained by
//! `num-rational`; this module only adds the small constructors and exact
//! combinatorial helpers the rest of the crate needs.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Rational from a machine integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`; panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Exact binomial coefficient C(n, k); zero for `k > n`.
pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n - i) / Int::from(i + 1);
    }
    acc
}

/// Binomial coefficient as a rational.
pub fn binomial_rat(n: u64, k: u64) -> Rat {
    Rat::from_integer(binomial(n, k))
}

/// `(-1)^k` as an i64.
pub fn neg_one_pow(k: u32) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The integer value of `r` if its denominator is one.
pub fn as_integer(r: &Rat) -> Option<Int> {
    if r.denom().is_one() {
        Some(r.numer().clone())
    } else {
        None
    }
}

/// True if `r` is a non-negative integer.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    r.denom().is_one() && !r.numer().is_negative()
}
