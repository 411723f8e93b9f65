//! Closed-form predictions for shifted Hankel determinants.
//!
//! Nothing here computes a determinant of the matrix being predicted. The
//! polynomial values `p_m(t, n)` come from the quadratic recursion seeded by
//! Narayana polynomials; [`p_t_via_det`] is the determinant route, kept for
//! cross-validation.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_ring::{binom2_sign, rational_to_int, Poly, Rational};
use crate::hankel::{self, HankelSpec};
use crate::sequences::{SeqFamily, Sequence};

/// `p_m(n) = prod_{1 <= i <= j <= m-1} (2n + i + j) / (i + j)`.
///
/// The product is formed over the rationals and must come out integral;
/// anything else is reported as [`Error::NonIntegerResult`].
pub fn p_poly(m: u32, n: i64) -> Result<BigInt> {
    let m = i64::from(m);
    let mut acc = Rational::one();
    for i in 1..m {
        for j in i..m {
            let num = BigInt::from(2 * n + i + j);
            if num.is_zero() {
                return Ok(BigInt::zero());
            }
            acc *= Rational::new(num, BigInt::from(i + j));
        }
    }
    rational_to_int(&acc)
}

/// Checks `p_{m+1}(-n) = (-1)^binom(m+1, 2) p_{m+1}(n - m - 1)`.
pub fn reflection_check(m: u32, n: i64) -> Result<bool> {
    let lhs = p_poly(m + 1, -n)?;
    let rhs = p_poly(m + 1, n - i64::from(m) - 1)? * binom2_sign(i64::from(m) + 1);
    Ok(lhs == rhs)
}

/// `p_m(t, n)` as the forward-shifted Hankel determinant of the Narayana
/// polynomials.
pub fn p_t_via_det(m: usize, n: usize) -> Result<Poly> {
    let spec = HankelSpec::new(SeqFamily::NarayanaC, m as i64, n);
    Ok(hankel::det(&spec)?.value)
}

/// `p_m(t, n)` from the condensation recursion
///
/// `p_r(c) = (p_r(c-1) p_{r+2}(c-1) - p_{r+1}(c-1)^2) / p_{r+2}(c-2)`
///
/// with `p_r(0) = 1` and `p_r(1) = C_r(t)`. Column `c` is needed for rows
/// `m ..= m + 2(n - c)`, so the table is a wedge that narrows by two rows
/// per column.
pub fn p_t_via_recursion(m: usize, n: usize) -> Result<Poly> {
    if n == 0 {
        return Ok(Poly::one());
    }
    let seq = Sequence::shared(&SeqFamily::NarayanaC);
    if n == 1 {
        return seq.term(m as i64);
    }
    let top = m + 2 * (n - 1);
    // cols[c][r - m] = p_r(t, c)
    let mut cols: Vec<Vec<Poly>> = Vec::with_capacity(n + 1);
    cols.push(vec![Poly::one(); top - m + 1]);
    cols.push((m..=top).map(|r| seq.term(r as i64)).collect::<Result<_>>()?);
    for c in 2..=n {
        let last_row = m + 2 * (n - c);
        let mut col = Vec::with_capacity(last_row - m + 1);
        for r in m..=last_row {
            let k = r - m;
            let divisor = &cols[c - 2][k + 2];
            if divisor.is_zero() {
                return Err(Error::ZeroDivisorEncountered { m: r + 2, n: c - 2 });
            }
            let prev = &cols[c - 1];
            let num = &(&prev[k] * &prev[k + 2]) - &(&prev[k + 1] * &prev[k + 1]);
            col.push(num.exact_div(divisor)?);
        }
        cols.push(col);
    }
    Ok(cols[n][0].clone())
}

/// Which closed form produced a prediction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictionSource {
    /// Size 0: the empty determinant.
    EmptyMatrix,
    /// `1 <= n <= m`: the matrix has a zero first row.
    VanishingBand,
    /// `(-1)^binom(m+1,2) p_{m+1}(n-m-1)`, Catalan and M_b numbers.
    SignedProduct,
    /// Signed product scaled by `2^(n-m-1)`, central binomials.
    ScaledSignedProduct,
    /// `(-1)^binom(m+1,2) t^(n-m-1) p_{m+1}(t, n-m-1)`.
    NarayanaReflection,
    /// Same with `(2t)^(n-m-1)`, type-B Narayana.
    TypeBNarayanaReflection,
}

impl fmt::Display for PredictionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit enum serializes");
        f.write_str(s.as_str().unwrap_or_default())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub spec: HankelSpec,
    pub value: Poly,
    pub source: PredictionSource,
}

/// Predicted value of `det(a_{i+j-m})_{0 <= i,j < n}` for `m >= 1`.
pub fn predict_backward(family: &SeqFamily, m: u32, n: usize) -> Result<Prediction> {
    if m == 0 {
        return Err(Error::InvalidArgument("backward shift m must be at least 1".into()));
    }
    if let SeqFamily::ConvCatalan { .. } = family {
        return Err(Error::UnsupportedFamily(family.to_string()));
    }
    let spec = HankelSpec::new(family.clone(), -i64::from(m), n);
    let m_us = m as usize;
    let (value, source) = if n == 0 {
        (Poly::one(), PredictionSource::EmptyMatrix)
    } else if n <= m_us {
        (Poly::zero(), PredictionSource::VanishingBand)
    } else {
        let r = n - m_us - 1;
        let sign = BigInt::from(binom2_sign(i64::from(m) + 1));
        match family {
            SeqFamily::Catalan | SeqFamily::MNumbers { .. } => {
                let v = p_poly(m + 1, r as i64)? * &sign;
                (Poly::constant(v), PredictionSource::SignedProduct)
            }
            SeqFamily::CentralBinomial => {
                let v = p_poly(m + 1, r as i64)? * &sign * (BigInt::one() << r);
                (Poly::constant(v), PredictionSource::ScaledSignedProduct)
            }
            SeqFamily::NarayanaC => {
                let v = p_t_via_recursion(m_us + 1, r)?.shift(r).scale(&sign);
                (v, PredictionSource::NarayanaReflection)
            }
            SeqFamily::NarayanaB => {
                let v = p_t_via_recursion(m_us + 1, r)?
                    .shift(r)
                    .scale(&(sign * (BigInt::one() << r)));
                (v, PredictionSource::TypeBNarayanaReflection)
            }
            SeqFamily::ConvCatalan { .. } => unreachable!("rejected above"),
        }
    };
    Ok(Prediction { spec, value, source })
}
