//! Exact scalars, integer polynomials in `t`, and truncated power series in `x`.
//!
//! Everything here is immutable once built and never rounds. Integers are
//! [`BigInt`]s; rationals only appear where a closed form needs them.

mod poly;
mod series;

pub use poly::Poly;
pub use series::{Series, DEFAULT_ORDER};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type ExactInt = BigInt;
pub type Rational = num_rational::BigRational;

/// Binomial coefficient with the conventions used throughout the crate.
///
/// Returns 0 when `k < 0`, or when `n >= 0` and `k > n`. For negative `n`
/// the generalized coefficient `n (n-1) ... (n-k+1) / k!` is returned, so
/// `binomial(-1, k) = (-1)^k`.
pub fn binomial(n: i64, k: i64) -> ExactInt {
    if k < 0 || (n >= 0 && k > n) {
        return BigInt::zero();
    }
    // symmetric shortcut only makes sense in the ordinary range
    let k = if n >= 0 && k > n - k { n - k } else { k };
    let mut acc = BigInt::one();
    for i in 1..=k {
        // after step i, acc = binomial(n - k + i, i), always an integer
        acc *= BigInt::from(n - k + i);
        acc /= BigInt::from(i);
    }
    acc
}

/// `(-1)^e` for any integer exponent.
pub fn neg_one_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `(-1)^binomial(n, 2)`, read off `n mod 4`.
pub fn binom2_sign(n: i64) -> i64 {
    match n.rem_euclid(4) {
        0 | 1 => 1,
        _ => -1,
    }
}

/// Exact integer quotient; errors if `b` does not divide `a`.
pub fn exact_div_int(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::NonExactDivision {
            dividend: a.to_string(),
            divisor: b.to_string(),
        });
    }
    Ok(q)
}

/// Converts a rational to an integer, failing if the denominator is not 1.
pub fn rational_to_int(r: &Rational) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::NonIntegerResult(r.to_string()))
    }
}
