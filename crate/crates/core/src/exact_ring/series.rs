use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use super::Poly;
use crate::error::{Error, Result};

/// Truncation length used when a caller does not pick one.
pub const DEFAULT_ORDER: usize = 64;

/// Power series in `x` with [`Poly`] coefficients, known modulo `x^order`.
///
/// The coefficient vector always has exactly `order` entries, so the constant
/// term is `coeffs[0]`. Binary operations truncate to the smaller order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Poly>,
}

impl Series {
    /// Pads with zeros or truncates to `order` coefficients.
    ///
    /// # Panics
    /// If `order` is zero.
    pub fn from_coeffs(mut coeffs: Vec<Poly>, order: usize) -> Self {
        assert!(order >= 1, "series order must be positive");
        coeffs.resize(order, Poly::zero());
        Series { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64], order: usize) -> Self {
        Series::from_coeffs(coeffs.iter().map(|&c| Poly::constant(c)).collect(), order)
    }

    pub fn constant(c: Poly, order: usize) -> Self {
        Series::from_coeffs(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Poly::one(), order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Series::from_coeffs(vec![Poly::zero(), Poly::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// Coefficient of `x^n`, `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&Poly> {
        self.coeffs.get(n)
    }

    pub fn constant_term(&self) -> &Poly {
        &self.coeffs[0]
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::from_coeffs(self.coeffs[..order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Poly::is_zero)
    }

    /// Multiplies every coefficient by a polynomial in `t`.
    pub fn scale(&self, c: &Poly) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Series {
        let n = self.order();
        let mut coeffs = vec![Poly::zero(); k.min(n)];
        coeffs.extend(self.coeffs.iter().take(n.saturating_sub(k)).cloned());
        Series { coeffs }
    }

    /// Multiplicative inverse modulo `x^order`.
    ///
    /// Only a constant term of `±1` is accepted, which keeps the inverse in
    /// the integer polynomial ring.
    pub fn reciprocal(&self) -> Result<Series> {
        let a0 = self.constant_term();
        let unit = match a0.as_constant() {
            Some(c) if c == BigInt::from(1) || c == BigInt::from(-1) => Poly::constant(c),
            _ => return Err(Error::NonUnitConstantTerm(a0.to_string())),
        };
        let n = self.order();
        let mut inv: Vec<Poly> = Vec::with_capacity(n);
        inv.push(unit.clone());
        for k in 1..n {
            let mut acc = Poly::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if a.is_zero() || inv[k - i].is_zero() {
                    continue;
                }
                acc = &acc + &(a * &inv[k - i]);
            }
            // unit is its own inverse
            inv.push(-(&unit * &acc));
        }
        Ok(Series { coeffs: inv })
    }

    /// `self^k` for `k >= 1`, by repeated squaring.
    pub fn pow(&self, k: u32) -> Series {
        assert!(k >= 1, "series_pow needs a positive exponent");
        let mut base = self.clone();
        let mut acc: Option<Series> = None;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc.expect("k >= 1")
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;

    fn add(self, rhs: &'a Series) -> Series {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Series { coeffs }
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;

    fn sub(self, rhs: &'a Series) -> Series {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Series { coeffs }
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;

    /// Cauchy product truncated to the smaller order.
    fn mul(self, rhs: &'a Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut coeffs = vec![Poly::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Series { coeffs }
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
