//! The Catalan-type sequence families, extended by zero to negative indices.
//!
//! Integer families yield constant polynomials so every consumer can work over
//! [`Poly`] alone. [`Sequence`] adds an append-only memo on top of the pure
//! [`SeqFamily::term`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_ring::{binomial, exact_div_int, Poly, Series};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SeqFamily {
    /// `C_n = binom(2n, n) / (n + 1)`.
    Catalan,
    /// `binom(2n, n)`.
    CentralBinomial,
    /// `M_b(n) = sum_k (binom(n+k, k) - binom(n+k, k-1)) b^(n-k)`, generating
    /// function `C(x) / (1 - b x C(x))`.
    MNumbers {
        #[serde(with = "bigint_string")]
        b: BigInt,
    },
    /// Narayana polynomials `C_n(t)`.
    NarayanaC,
    /// Type-B Narayana polynomials `B_n(t) = sum_k binom(n, k)^2 t^k`.
    NarayanaB,
    /// Coefficients of `C(x)^k`.
    ConvCatalan { k: u32 },
}

impl SeqFamily {
    pub fn m_numbers(b: impl Into<BigInt>) -> Self {
        SeqFamily::MNumbers { b: b.into() }
    }

    pub fn conv(k: u32) -> Self {
        SeqFamily::ConvCatalan { k }
    }

    /// Whether terms depend on `t`.
    pub fn is_polynomial(&self) -> bool {
        matches!(self, SeqFamily::NarayanaC | SeqFamily::NarayanaB)
    }

    /// The exact `n`-th term, zero for `n < 0`.
    ///
    /// This is the un-memoized path; see [`Sequence`] for the cached one.
    pub fn term(&self, n: i64) -> Result<Poly> {
        if n < 0 {
            return Ok(Poly::zero());
        }
        match self {
            SeqFamily::Catalan => {
                let mut c = BigInt::one();
                for i in 0..n {
                    c = catalan_step(&c, i)?;
                }
                Ok(Poly::constant(c))
            }
            _ => self.direct_term(n),
        }
    }

    /// Closed-form evaluation for every family but Catalan, which uses the
    /// step recurrence.
    fn direct_term(&self, n: i64) -> Result<Poly> {
        debug_assert!(n >= 0);
        let value = match self {
            SeqFamily::Catalan => exact_div_int(&binomial(2 * n, n), &BigInt::from(n + 1))?,
            SeqFamily::CentralBinomial => binomial(2 * n, n),
            SeqFamily::MNumbers { b } => {
                let mut acc = BigInt::zero();
                let mut b_pow = BigInt::one();
                // k runs down from n so the power of b grows
                for k in (0..=n).rev() {
                    let ballot = binomial(n + k, k) - binomial(n + k, k - 1);
                    acc += ballot * &b_pow;
                    b_pow *= b;
                }
                acc
            }
            SeqFamily::ConvCatalan { k } => {
                if *k == 0 {
                    return Err(Error::InvalidArgument("convolution power k must be positive".into()));
                }
                let k = i64::from(*k);
                exact_div_int(&(binomial(2 * n + k, n) * k), &BigInt::from(2 * n + k))?
            }
            SeqFamily::NarayanaC => {
                let coeffs = (0..=n)
                    .map(|k| exact_div_int(&(binomial(n - 1, k) * binomial(n, k)), &BigInt::from(k + 1)))
                    .collect::<Result<Vec<_>>>()?;
                return Ok(Poly::from_coeffs(coeffs));
            }
            SeqFamily::NarayanaB => {
                let coeffs = (0..=n)
                    .map(|k| {
                        let c = binomial(n, k);
                        &c * &c
                    })
                    .collect();
                return Ok(Poly::from_coeffs(coeffs));
            }
        };
        Ok(Poly::constant(value))
    }

    /// Series whose `x^n` coefficient is `term(n)` for `0 <= n < order`.
    pub fn generating_series(&self, order: usize) -> Result<Series> {
        let seq = Sequence::shared(self);
        let coeffs = (0..order as i64).map(|n| seq.term(n)).collect::<Result<Vec<_>>>()?;
        Ok(Series::from_coeffs(coeffs, order))
    }
}

/// `C_{i+1} = C_i * 2(2i+1) / (i+2)`, division checked.
fn catalan_step(c: &BigInt, i: i64) -> Result<BigInt> {
    exact_div_int(&(c * BigInt::from(2 * (2 * i + 1))), &BigInt::from(i + 2))
}

impl fmt::Display for SeqFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqFamily::Catalan => f.write_str("catalan"),
            SeqFamily::CentralBinomial => f.write_str("central-binomial"),
            SeqFamily::MNumbers { b } => write!(f, "m-numbers(b={b})"),
            SeqFamily::NarayanaC => f.write_str("narayana-c"),
            SeqFamily::NarayanaB => f.write_str("narayana-b"),
            SeqFamily::ConvCatalan { k } => write!(f, "conv(k={k})"),
        }
    }
}

/// A family together with a memo of its non-negative terms.
///
/// The memo only grows, and every reader sees the same values a fresh
/// computation would produce.
#[derive(Debug)]
pub struct Sequence {
    family: SeqFamily,
    memo: RwLock<Vec<Poly>>,
}

impl Sequence {
    pub fn new(family: SeqFamily) -> Self {
        Sequence {
            family,
            memo: RwLock::new(Vec::new()),
        }
    }

    /// Process-wide instance for `family`, created on first use.
    pub fn shared(family: &SeqFamily) -> Arc<Sequence> {
        static REGISTRY: OnceLock<Mutex<HashMap<SeqFamily, Arc<Sequence>>>> = OnceLock::new();
        let mut map = REGISTRY
            .get_or_init(Default::default)
            .lock()
            .unwrap_or_else(|e| e.into_inner());
        map.entry(family.clone())
            .or_insert_with(|| Arc::new(Sequence::new(family.clone())))
            .clone()
    }

    pub fn family(&self) -> &SeqFamily {
        &self.family
    }

    pub fn term(&self, n: i64) -> Result<Poly> {
        if n < 0 {
            return Ok(Poly::zero());
        }
        let idx = n as usize;
        {
            let memo = self.memo.read().unwrap_or_else(|e| e.into_inner());
            if let Some(v) = memo.get(idx) {
                return Ok(v.clone());
            }
        }
        let mut memo = self.memo.write().unwrap_or_else(|e| e.into_inner());
        while memo.len() <= idx {
            let i = memo.len() as i64;
            let next = match (&self.family, memo.last()) {
                (SeqFamily::Catalan, Some(prev)) => {
                    let prev = prev.as_constant().expect("catalan terms are constants");
                    Poly::constant(catalan_step(&prev, i - 1)?)
                }
                (SeqFamily::Catalan, None) => Poly::one(),
                _ => self.family.direct_term(i)?,
            };
            memo.push(next);
        }
        Ok(memo[idx].clone())
    }

    /// Terms for every index in `from..=to`.
    pub fn terms(&self, from: i64, to: i64) -> Result<Vec<Poly>> {
        (from..=to).map(|n| self.term(n)).collect()
    }
}

/// Arbitrary-precision integers travel as decimal strings.
pub(crate) mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_ring::DEFAULT_ORDER;

    fn int(p: Poly) -> BigInt {
        p.as_constant().expect("constant term")
    }

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn term_examples() {
        assert_eq!(SeqFamily::Catalan.term(5).unwrap(), Poly::constant(42));
        assert!(SeqFamily::Catalan.term(-2).unwrap().is_zero());
        assert_eq!(SeqFamily::m_numbers(2).term(3).unwrap(), Poly::constant(35));
        assert_eq!(SeqFamily::conv(3).term(4).unwrap(), Poly::constant(90));
        assert_eq!(SeqFamily::NarayanaC.term(3).unwrap(), p(&[1, 3, 1]));
        assert_eq!(SeqFamily::NarayanaB.term(2).unwrap(), p(&[1, 4, 1]));
    }

    #[test]
    fn every_family_starts_at_one_and_vanishes_left() {
        let fams = [
            SeqFamily::Catalan,
            SeqFamily::CentralBinomial,
            SeqFamily::m_numbers(-3),
            SeqFamily::m_numbers(5),
            SeqFamily::NarayanaC,
            SeqFamily::NarayanaB,
            SeqFamily::conv(1),
            SeqFamily::conv(7),
        ];
        for f in fams {
            assert!(f.term(0).unwrap().is_one(), "{f}");
            for n in -5..0 {
                assert!(f.term(n).unwrap().is_zero(), "{f} at {n}");
                assert!(Sequence::shared(&f).term(n).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn narayana_list() {
        let expected = [
            p(&[1]),
            p(&[1]),
            p(&[1, 1]),
            p(&[1, 3, 1]),
            p(&[1, 6, 6, 1]),
            p(&[1, 10, 20, 10, 1]),
        ];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(&SeqFamily::NarayanaC.term(n as i64).unwrap(), e);
        }
    }

    #[test]
    fn memo_matches_direct_path() {
        let fams = [SeqFamily::Catalan, SeqFamily::NarayanaC, SeqFamily::m_numbers(-2), SeqFamily::conv(4)];
        for f in fams {
            let seq = Sequence::new(f.clone());
            // out-of-order access exercises memo growth
            for n in [17, 3, 40, 0, 25] {
                assert_eq!(seq.term(n).unwrap(), f.term(n).unwrap(), "{f} n={n}");
            }
        }
        for n in 0..40 {
            assert_eq!(SeqFamily::Catalan.term(n).unwrap(), SeqFamily::Catalan.direct_term(n).unwrap());
        }
    }

    #[test]
    fn conv_zero_is_rejected() {
        assert!(SeqFamily::conv(0).term(1).is_err());
    }

    #[test]
    fn generating_series_examples() {
        let s = SeqFamily::Catalan.generating_series(5).unwrap();
        assert_eq!(s, Series::from_i64s(&[1, 1, 2, 5, 14], 5));
        let s = SeqFamily::m_numbers(1).generating_series(5).unwrap();
        assert_eq!(s, Series::from_i64s(&[1, 2, 5, 14, 42], 5));
        let s = SeqFamily::NarayanaC.generating_series(4).unwrap();
        assert_eq!(s.coeffs(), &[p(&[1]), p(&[1]), p(&[1, 1]), p(&[1, 3, 1])]);
    }

    #[test]
    fn m_numbers_special_cases() {
        for n in 0..=40 {
            let m0 = int(SeqFamily::m_numbers(0).term(n).unwrap());
            let m1 = int(SeqFamily::m_numbers(1).term(n).unwrap());
            let m2 = int(SeqFamily::m_numbers(2).term(n).unwrap());
            assert_eq!(m0, int(SeqFamily::Catalan.term(n).unwrap()));
            assert_eq!(m1, int(SeqFamily::Catalan.term(n + 1).unwrap()));
            assert_eq!(m2, binomial(2 * n + 1, n));
        }
    }

    #[test]
    fn t_families_at_one() {
        let one = BigInt::one();
        for n in 0..=40 {
            assert_eq!(SeqFamily::NarayanaC.term(n).unwrap().eval(&one), int(SeqFamily::Catalan.term(n).unwrap()));
            assert_eq!(SeqFamily::NarayanaB.term(n).unwrap().eval(&one), binomial(2 * n, n));
        }
    }

    #[test]
    fn m_numbers_generating_function() {
        let order = DEFAULT_ORDER;
        let c = SeqFamily::Catalan.generating_series(order).unwrap();
        let xc = c.shift(1);
        for b in -2i64..=3 {
            let m = SeqFamily::m_numbers(b).generating_series(order).unwrap();
            let denom = &Series::one(order) - &xc.scale(&Poly::constant(b));
            assert_eq!(&m * &denom, c, "b = {b}");
        }
    }

    #[test]
    fn conv_terms_match_series_powers() {
        let c = SeqFamily::Catalan.generating_series(41).unwrap();
        for k in 1..=8u32 {
            let pow = c.pow(k);
            for n in 0..=40 {
                assert_eq!(&SeqFamily::conv(k).term(n).unwrap(), pow.coeff(n as usize).unwrap(), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn family_json_roundtrip() {
        for f in [SeqFamily::m_numbers(-7), SeqFamily::conv(3), SeqFamily::NarayanaB] {
            let s = serde_json::to_string(&f).unwrap();
            assert_eq!(serde_json::from_str::<SeqFamily>(&s).unwrap(), f);
        }
        assert_eq!(
            serde_json::to_string(&SeqFamily::m_numbers(-2)).unwrap(),
            r#"{"kind":"m-numbers","b":"-2"}"#
        );
    }
}
