//! Shifted Hankel matrices `(a_{m+i+j})` and their exact determinants.
//!
//! Three engines are available: a memoized cofactor expansion (small
//! matrices only, used as an oracle), fraction-free Bareiss elimination, and
//! Dodgson condensation. Backward shifts put zeros in the upper-left corner,
//! which often stalls condensation, so [`det`] falls back to Bareiss.

pub mod engines;

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_ring::{Poly, Series};
use crate::sequences::{SeqFamily, Sequence};

pub use engines::COFACTOR_MAX_DIM;

/// Request for `det(a_{shift+i+j})_{0 <= i,j < size}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HankelSpec {
    pub family: SeqFamily,
    pub shift: i64,
    pub size: usize,
}

impl HankelSpec {
    pub fn new(family: SeqFamily, shift: i64, size: usize) -> Self {
        HankelSpec { family, shift, size }
    }

    /// The `size x size` matrix whose first row holds exactly `k` entries
    /// with non-negative index (for `k <= size`), i.e. shift `k - size`.
    pub fn anti_triangular(family: SeqFamily, k: i64, size: usize) -> Self {
        HankelSpec::new(family, k - size as i64, size)
    }
}

impl fmt::Display for HankelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} shift={} size={}", self.family, self.shift, self.size)
    }
}

/// Square matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Poly>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        Matrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Matrix { dim, entries }
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Poly::constant(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.dim + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Poly]> {
        // chunks of an empty slice would panic on size 0
        self.entries.chunks(self.dim.max(1))
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        self.rows().map(<[Poly]>::to_vec).collect()
    }

    /// `Some` with integer rows when no entry depends on `t`.
    fn to_int_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        self.rows()
            .map(|r| r.iter().map(Poly::as_constant).collect::<Option<Vec<_>>>())
            .collect()
    }

    /// Entry `(i, j)` depends only on `i + j`.
    pub fn is_hankel(&self) -> bool {
        (1..self.dim).all(|i| (0..self.dim - 1).all(|j| self.get(i, j) == self.get(i - 1, j + 1)))
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        Matrix::from_fn(self.dim, |i, k| {
            (0..self.dim).fold(Poly::zero(), |acc, j| {
                let (a, b) = (self.get(i, j), rhs.get(j, k));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Cofactor,
    Bareiss,
    Condensation,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Cofactor => "cofactor",
            Engine::Bareiss => "bareiss",
            Engine::Condensation => "condensation",
        })
    }
}

/// An exact determinant and the engine that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetResult {
    pub value: Poly,
    pub engine: Engine,
    pub spec: HankelSpec,
}

/// Materializes the Hankel matrix; negative indices read as zero.
pub fn build(spec: &HankelSpec) -> Result<Matrix> {
    let n = spec.size;
    if n == 0 {
        return Ok(Matrix::from_rows(Vec::new()));
    }
    let seq = Sequence::shared(&spec.family);
    let terms = seq.terms(spec.shift, spec.shift + 2 * (n as i64 - 1))?;
    Ok(Matrix::from_fn(n, |i, j| terms[i + j].clone()))
}

/// Laplace expansion; refuses dimensions above [`COFACTOR_MAX_DIM`].
pub fn det_cofactor(m: &Matrix) -> Result<Poly> {
    match m.to_int_rows() {
        Some(rows) => engines::cofactor(&rows).map(Poly::from),
        None => engines::cofactor(&m.to_rows()),
    }
}

/// Bareiss elimination, switching to plain integers when every entry is
/// constant.
pub fn det_bareiss(m: &Matrix) -> Result<Poly> {
    match m.to_int_rows() {
        Some(rows) => engines::bareiss(rows).map(Poly::from),
        None => det_bareiss_over_poly(m),
    }
}

/// Bareiss over the polynomial ring even for constant matrices. Must agree
/// with [`det_bareiss`] bit for bit.
pub fn det_bareiss_over_poly(m: &Matrix) -> Result<Poly> {
    engines::bareiss(m.to_rows())
}

/// Dodgson condensation; `Ok(None)` when a zero interior minor blocks it.
pub fn det_condensation(m: &Matrix) -> Result<Option<Poly>> {
    match m.to_int_rows() {
        Some(rows) => Ok(engines::condensation(rows)?.map(Poly::from)),
        None => engines::condensation(m.to_rows()),
    }
}

/// Condensation when available, otherwise Bareiss.
pub fn det(spec: &HankelSpec) -> Result<DetResult> {
    let m = build(spec)?;
    let (value, engine) = match det_condensation(&m)? {
        Some(v) => (v, Engine::Condensation),
        None => (det_bareiss(&m)?, Engine::Bareiss),
    };
    Ok(DetResult {
        value,
        engine,
        spec: spec.clone(),
    })
}

/// Runs one specific engine; condensation reports
/// [`Error::EngineUnavailable`] instead of falling back.
pub fn det_with(spec: &HankelSpec, engine: Engine) -> Result<DetResult> {
    let m = build(spec)?;
    let value = match engine {
        Engine::Cofactor => det_cofactor(&m)?,
        Engine::Bareiss => det_bareiss(&m)?,
        Engine::Condensation => {
            det_condensation(&m)?.ok_or_else(|| Error::EngineUnavailable(engine.to_string()))?
        }
    };
    Ok(DetResult {
        value,
        engine,
        spec: spec.clone(),
    })
}

/// Runs every applicable engine and insists they agree.
///
/// Cofactor joins only for `size <= COFACTOR_MAX_DIM`, condensation only when
/// available. The returned engine is the one [`det`] would have picked.
pub fn cross_check(spec: &HankelSpec) -> Result<DetResult> {
    let m = build(spec)?;
    let mut outputs: Vec<(Engine, Poly)> = vec![(Engine::Bareiss, det_bareiss(&m)?)];
    if m.dim() <= COFACTOR_MAX_DIM {
        outputs.push((Engine::Cofactor, det_cofactor(&m)?));
    }
    let condensed = det_condensation(&m)?;
    if let Some(v) = &condensed {
        outputs.push((Engine::Condensation, v.clone()));
    }
    let value = outputs[0].1.clone();
    if outputs.iter().any(|(_, v)| *v != value) {
        let outputs = outputs
            .iter()
            .map(|(e, v)| format!("{e}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::EngineDisagreement {
            spec: spec.to_string(),
            outputs,
        });
    }
    let engine = if condensed.is_some() {
        Engine::Condensation
    } else {
        Engine::Bareiss
    };
    Ok(DetResult {
        value,
        engine,
        spec: spec.clone(),
    })
}

/// Multiplies the anti-triangular Hankel matrix `(a(i+j-n))` by the
/// anti-triangular `(b(n-j-k))`, both `(n+1) x (n+1)`, and checks that the
/// product is the lower-triangular Toeplitz matrix `(c(i-k))` of `c = a b`.
pub fn lemma3_product(a: &Series, b: &Series, n: usize) -> Result<Matrix> {
    if a.order() < n + 1 || b.order() < n + 1 {
        return Err(Error::InvalidArgument(format!(
            "series orders {} and {} are too short for n = {n}",
            a.order(),
            b.order()
        )));
    }
    let at = |s: &Series, idx: i64| -> Poly {
        if idx < 0 {
            Poly::zero()
        } else {
            s.coeff(idx as usize).cloned().unwrap_or_default()
        }
    };
    let n_i = n as i64;
    let left = Matrix::from_fn(n + 1, |i, j| at(a, i as i64 + j as i64 - n_i));
    let right = Matrix::from_fn(n + 1, |j, k| at(b, n_i - j as i64 - k as i64));
    let product = left.mul(&right);
    let c = a * b;
    for i in 0..=n {
        for k in 0..=n {
            let expected = at(&c, i as i64 - k as i64);
            if *product.get(i, k) != expected {
                return Err(Error::IdentityViolation(format!(
                    "product entry ({i},{k}) is {} but the series product gives {expected}",
                    product.get(i, k)
                )));
            }
        }
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn build_examples() {
        let m = build(&HankelSpec::new(SeqFamily::Catalan, -3, 4)).unwrap();
        assert_eq!(m, Matrix::from_i64s(&[&[0, 0, 0, 1], &[0, 0, 1, 1], &[0, 1, 1, 2], &[1, 1, 2, 5]]));
        let m = build(&HankelSpec::new(SeqFamily::Catalan, 0, 1)).unwrap();
        assert_eq!(m, Matrix::from_i64s(&[&[1]]));
        let m = build(&HankelSpec::new(SeqFamily::Catalan, 2, 2)).unwrap();
        assert_eq!(m, Matrix::from_i64s(&[&[2, 5], &[5, 14]]));
        assert_eq!(build(&HankelSpec::new(SeqFamily::Catalan, 5, 0)).unwrap().dim(), 0);
        assert!(build(&HankelSpec::new(SeqFamily::NarayanaB, -2, 6)).unwrap().is_hankel());
    }

    #[test]
    fn cofactor_examples() {
        assert_eq!(det_cofactor(&Matrix::from_i64s(&[&[2, 5], &[5, 14]])).unwrap(), p(&[3]));
        assert_eq!(det_cofactor(&Matrix::from_rows(vec![])).unwrap(), Poly::one());
        let m = Matrix::from_i64s(&[&[0, 1, 1, 2], &[1, 1, 2, 5], &[1, 2, 5, 14], &[2, 5, 14, 42]]);
        assert_eq!(det_cofactor(&m).unwrap(), p(&[-3]));
        let big = build(&HankelSpec::new(SeqFamily::Catalan, 0, 9)).unwrap();
        assert!(matches!(det_cofactor(&big), Err(Error::DimensionTooLarge { dim: 9, .. })));
    }

    #[test]
    fn bareiss_examples() {
        let m = Matrix::from_i64s(&[&[0, 1, 1, 2], &[1, 1, 2, 5], &[1, 2, 5, 14], &[2, 5, 14, 42]]);
        assert_eq!(det_bareiss(&m).unwrap(), p(&[-3]));
        let m = build(&HankelSpec::new(SeqFamily::Catalan, -3, 12)).unwrap();
        assert_eq!(det_bareiss(&m).unwrap(), p(&[21945]));
        let m = build(&HankelSpec::new(SeqFamily::NarayanaC, -1, 3)).unwrap();
        assert_eq!(det_bareiss(&m).unwrap(), p(&[0, -1, -1]));
    }

    #[test]
    fn integer_and_polynomial_bareiss_agree() {
        for fam in [SeqFamily::Catalan, SeqFamily::CentralBinomial, SeqFamily::conv(5)] {
            for shift in -4..=4 {
                for size in 0..=10 {
                    let m = build(&HankelSpec::new(fam.clone(), shift, size)).unwrap();
                    assert_eq!(det_bareiss(&m).unwrap(), det_bareiss_over_poly(&m).unwrap());
                }
            }
        }
    }

    #[test]
    fn condensation_examples() {
        let m = Matrix::from_i64s(&[&[2, 5], &[5, 14]]);
        assert_eq!(det_condensation(&m).unwrap(), Some(p(&[3])));
        let m = build(&HankelSpec::new(SeqFamily::Catalan, 1, 5)).unwrap();
        assert_eq!(det_condensation(&m).unwrap(), Some(Poly::one()));
        // lists are indexed from n = 0: D_{-1} = (1, 0, -1, -2, ...)
        for (size, expected) in [(2, -1), (3, -2)] {
            let m = build(&HankelSpec::new(SeqFamily::Catalan, -1, size)).unwrap();
            if let Some(v) = det_condensation(&m).unwrap() {
                assert_eq!(v, p(&[expected]));
            }
        }
        // a forward-shifted t-family matrix condenses without zero minors
        let m = build(&HankelSpec::new(SeqFamily::NarayanaC, 2, 4)).unwrap();
        assert_eq!(det_condensation(&m).unwrap().unwrap(), det_bareiss(&m).unwrap());
    }

    #[test]
    fn dispatcher_examples() {
        assert_eq!(det(&HankelSpec::new(SeqFamily::Catalan, -2, 4)).unwrap().value, p(&[-5]));
        assert_eq!(det(&HankelSpec::new(SeqFamily::Catalan, -2, 5)).unwrap().value, p(&[-14]));
        for fam in [SeqFamily::NarayanaB, SeqFamily::conv(3), SeqFamily::m_numbers(-1)] {
            let r = det(&HankelSpec::new(fam, -7, 0)).unwrap();
            assert!(r.value.is_one());
        }
        // brute-force cofactor oracle on the explicit matrix, then the dispatcher
        let explicit = Matrix::from_i64s(&[&[0, 1, 2, 6], &[1, 2, 6, 20], &[2, 6, 20, 70], &[6, 20, 70, 252]]);
        assert_eq!(det_cofactor(&explicit).unwrap(), p(&[-12]));
        let r = det(&HankelSpec::new(SeqFamily::CentralBinomial, -1, 4)).unwrap();
        assert_eq!(r.value, p(&[-12]));
    }

    #[test]
    fn dispatcher_records_engine() {
        let r = det(&HankelSpec::new(SeqFamily::Catalan, 1, 6)).unwrap();
        assert_eq!(r.engine, Engine::Condensation);
        // V_1(5): the only nonzero in row 0 is the corner, interior minors vanish
        let r = det(&HankelSpec::new(SeqFamily::Catalan, -4, 5)).unwrap();
        assert_eq!(r.engine, Engine::Bareiss);
        assert_eq!(r.value, Poly::one());
        assert!(matches!(
            det_with(&HankelSpec::new(SeqFamily::Catalan, -4, 5), Engine::Condensation),
            Err(Error::EngineUnavailable(_))
        ));
    }

    #[test]
    fn cross_check_examples() {
        let r = cross_check(&HankelSpec::new(SeqFamily::Catalan, 0, 6)).unwrap();
        assert!(r.value.is_one());
        let r = cross_check(&HankelSpec::new(SeqFamily::NarayanaC, -2, 3)).unwrap();
        assert_eq!(r.value, p(&[-1]));
        let r = cross_check(&HankelSpec::new(SeqFamily::NarayanaC, -2, 4)).unwrap();
        assert_eq!(r.value, p(&[0, -1, -3, -1]));
        let r = cross_check(&HankelSpec::new(SeqFamily::conv(3), 0, 2)).unwrap();
        assert!(r.value.is_zero());
        // beyond the cofactor limit the other engines still run
        let r = cross_check(&HankelSpec::new(SeqFamily::Catalan, 4, 9)).unwrap();
        assert_eq!(r.value, p(&[38962]));
    }

    #[test]
    fn anti_triangular_first_row() {
        for k in 1..=4 {
            let spec = HankelSpec::anti_triangular(SeqFamily::Catalan, k, 6);
            let m = build(&spec).unwrap();
            let nonzero = (0..6).filter(|&j| !m.get(0, j).is_zero()).count();
            assert_eq!(nonzero as i64, k);
        }
    }

    #[test]
    fn product_examples() {
        let c = SeqFamily::Catalan.generating_series(8).unwrap();
        let inv = c.reciprocal().unwrap();
        let m = lemma3_product(&c, &inv, 3).unwrap();
        assert_eq!(m, Matrix::from_fn(4, |i, k| if i == k { Poly::one() } else { Poly::zero() }));

        let m = lemma3_product(&c, &c, 2).unwrap();
        assert_eq!(m, Matrix::from_i64s(&[&[1, 0, 0], &[2, 1, 0], &[5, 2, 1]]));
    }

    #[test]
    fn product_of_random_pair() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1e33a3);
        for _ in 0..20 {
            let a: Vec<i64> = (0..6).map(|_| rng.gen_range(-9..=9)).collect();
            let b: Vec<i64> = (0..6).map(|_| rng.gen_range(-9..=9)).collect();
            // direct convolution oracle, independent of Series multiplication
            let c: Vec<i64> = (0..6).map(|n| (0..=n).map(|i| a[i] * b[n - i]).sum()).collect();
            let m = lemma3_product(&Series::from_i64s(&a, 6), &Series::from_i64s(&b, 6), 5).unwrap();
            for i in 0..6 {
                for k in 0..6 {
                    let e = if i >= k { c[i - k] } else { 0 };
                    assert_eq!(m.get(i, k), &Poly::constant(e));
                }
            }
        }
        let short = Series::from_i64s(&[1, 1], 2);
        assert!(lemma3_product(&short, &short, 4).is_err());
    }

    #[test]
    fn central_binomial_forward_values() {
        // det(binom(2(i+j), i+j)) = 2^(n-1)
        for n in 1..=10usize {
            let r = det(&HankelSpec::new(SeqFamily::CentralBinomial, 0, n)).unwrap();
            assert_eq!(r.value, Poly::constant(BigInt::from(2).pow(n as u32 - 1)));
        }
    }
}
