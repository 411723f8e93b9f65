use num_bigint::BigInt;
use num_traits::One;

use super::{det_value, Cell, CellParams, Claim, GridRange, Report};
use crate::error::{Error, Result};
use crate::exact_ring::{binom2_sign, neg_one_pow, rational_to_int, Poly, Rational};
use crate::sequences::SeqFamily;

fn conv_det(k: u32, shift: i64, size: usize) -> Result<Poly> {
    det_value(&SeqFamily::conv(k), shift, size)
}

fn signed(sign: i64, p: Poly) -> Poly {
    if sign < 0 {
        -p
    } else {
        p
    }
}

fn check_k_list(range: &GridRange) -> Result<()> {
    if range.k_list.is_empty() || range.k_list.contains(&0) {
        return Err(Error::InvalidArgument("k list must be non-empty and positive".into()));
    }
    Ok(())
}

/// Backward/forward reflection for convolution powers.
///
/// Even clause, family `C(x)^(2k)`:
/// `D_{1-k-m}(n) = (-1)^binom(m+k,2) D_{1-k+m}(n-m-k)` for `n >= m+k`,
/// zero for `0 < n < m+k`.
///
/// Odd clause, family `C(x)^(2k-1)`:
/// `D_{2-k-m}(n) = (-1)^binom(m+k-1,2) D_{1-k+m}(n-m-k+1)` for
/// `n >= m+k-1`, zero for `0 < n < m+k-1`.
///
/// `n = 0` falls outside both stated ranges when the threshold is positive;
/// those cells are still checked against the empty-determinant value 1 but
/// carry a note.
pub fn verify_conjecture10(range: &GridRange) -> Result<Report> {
    check_k_list(range)?;
    let mut cells = Vec::new();
    for &k in &range.k_list {
        let ki = i64::from(k);
        for m in range.m_min.max(0)..=range.m_max {
            for n in 0..=range.n_max {
                let ni = n as i64;
                // (clause, family power, backward shift, threshold, forward shift)
                let clauses = [
                    ("even", 2 * k, 1 - ki - m, m + ki, 1 - ki + m),
                    ("odd", 2 * k - 1, 2 - ki - m, m + ki - 1, 1 - ki + m),
                ];
                for (clause, power, back, threshold, fwd) in clauses {
                    let params = CellParams::new(m, ni).with_k(k).with_clause(clause);
                    let actual = conv_det(power, back, n);
                    let (expected, note) = if ni >= threshold {
                        let e = conv_det(power, fwd, (ni - threshold) as usize)
                            .map(|d| signed(binom2_sign(threshold), d));
                        (e, None)
                    } else if n > 0 {
                        (Ok(Poly::zero()), None)
                    } else {
                        (Ok(Poly::one()), Some("n = 0 is outside the stated ranges; empty determinant"))
                    };
                    let cell = Cell::evaluate(params, expected, actual, None);
                    cells.push(match note {
                        Some(n) => cell.with_note(n),
                        None => cell,
                    });
                }
            }
        }
    }
    Ok(Report::new(Claim::C10, range.clone(), cells))
}

/// Periodic values of `D_{1-k}(C(x)^(2k); n)` and `D_{2-k}(C(x)^(2k-1); n)`.
///
/// Cells report `m = 0` and the determinant size as `n`.
pub fn verify_conjecture11(range: &GridRange) -> Result<Report> {
    check_k_list(range)?;
    let mut cells = Vec::new();
    for &k in &range.k_list {
        let ki = i64::from(k);
        for n in 0..=range.n_max {
            let ni = n as i64;
            let even = if ni % ki == 0 {
                neg_one_pow(ki * (ki - 1) / 2 * (ni / ki))
            } else {
                0
            };
            cells.push(Cell::evaluate(
                CellParams::new(0, ni).with_k(k).with_clause("even"),
                Ok(Poly::constant(even)),
                conv_det(2 * k, 1 - ki, n),
                None,
            ));

            let period = 2 * ki - 1;
            let (q, r) = (ni / period, ni % period);
            let odd = if r == 0 {
                neg_one_pow((ki - 1) * q)
            } else if r == ki - 1 {
                neg_one_pow((ki - 1) * q) * binom2_sign(ki - 1)
            } else {
                0
            };
            cells.push(Cell::evaluate(
                CellParams::new(0, ni).with_k(k).with_clause("odd"),
                Ok(Poly::constant(odd)),
                conv_det(2 * k - 1, 2 - ki, n),
                None,
            ));
        }
    }
    Ok(Report::new(Claim::C11, range.clone(), cells))
}

/// Polynomial growth along the non-vanishing residue class:
///
/// `D_{m+1-k}(C(x)^(2k); kn) = (-1)^(binom(k,2) n) (n+1)^m` and
/// `D_{m+2-k}(C(x)^(2k-1); (2k-1)n+k-1) = (-1)^(binom(k-1,2)+(k-1)n) (2k-1)^m (n+1)^m`
/// for `0 <= m <= k`. Cells record the formula's `n`, not the matrix size.
///
/// For `k = 1` the even clause is also compared against the plain Catalan
/// determinants `D_{m+1}(n)` (clause `k1-reduction`), which must give
/// `1` and `n + 1` for `m = 0, 1`.
pub fn verify_conjecture12(range: &GridRange) -> Result<Report> {
    check_k_list(range)?;
    let mut cells = Vec::new();
    for &k in &range.k_list {
        let ki = i64::from(k);
        let m_hi = range.m_max.min(ki);
        for m in range.m_min.max(0)..=m_hi {
            let mu = m as u32;
            let mut n = 0i64;
            while ki * n <= range.n_max as i64 {
                let sign = neg_one_pow(ki * (ki - 1) / 2 * n);
                let value = BigInt::from(n + 1).pow(mu) * sign;
                cells.push(Cell::evaluate(
                    CellParams::new(m, n).with_k(k).with_clause("even"),
                    Ok(Poly::constant(value.clone())),
                    conv_det(2 * k, m + 1 - ki, (ki * n) as usize),
                    None,
                ));
                if k == 1 && m <= 1 {
                    cells.push(Cell::evaluate(
                        CellParams::new(m, n).with_k(k).with_clause("k1-reduction"),
                        Ok(Poly::constant(value)),
                        det_value(&SeqFamily::Catalan, m + 1, n as usize),
                        None,
                    ));
                }
                n += 1;
            }
            let mut n = 0i64;
            while (2 * ki - 1) * n + ki - 1 <= range.n_max as i64 {
                let size = ((2 * ki - 1) * n + ki - 1) as usize;
                let sign = binom2_sign(ki - 1) * neg_one_pow((ki - 1) * n);
                let value = (BigInt::from(2 * ki - 1) * BigInt::from(n + 1)).pow(mu) * sign;
                cells.push(Cell::evaluate(
                    CellParams::new(m, n).with_k(k).with_clause("odd"),
                    Ok(Poly::constant(value)),
                    conv_det(2 * k - 1, m + 2 - ki, size),
                    None,
                ));
                n += 1;
            }
        }
    }
    Ok(Report::new(Claim::C12, range.clone(), cells))
}

/// Predicted `D_0(C(x)^k; size)` for `3 <= k <= 7`, from the residue-class
/// formulas. Rational constants are evaluated exactly and must be integral.
pub fn modular_pattern_value(k: u32, size: usize) -> Result<BigInt> {
    let period: i64 = match k {
        3 => 3,
        4 => 2,
        5 => 5,
        6 => 3,
        7 => 7,
        _ => return Err(Error::InvalidArgument(format!("no modular pattern listed for k = {k}"))),
    };
    let size = size as i64;
    let (q, r) = (size / period, size % period);
    let s = |e: i64| BigInt::from(neg_one_pow(e));
    let big = |v: i64| BigInt::from(v);
    let ratio = |num: i64, den: i64, rest: BigInt| -> Result<BigInt> {
        rational_to_int(&(Rational::new(big(num), big(den)) * Rational::from_integer(rest)))
    };
    let value = match (k, r) {
        (3, 0 | 1) => s(q),
        (3, _) => big(0),
        (4, _) => s(q) * (q + 1),
        (5, 0 | 1) => BigInt::one(),
        (5, 2) => big(-5 * (q + 1)),
        (5, 3) => big(0),
        (5, _) => big(5 * (q + 1)),
        (6, 0 | 1) => s(q) * big((q + 1) * (q + 1)),
        (6, _) => s(q + 1) * ratio(3, 2, big((1 + q) * (2 + q) * (3 + 2 * q)))?,
        (7, 0 | 1) => s(q),
        (7, 2) => s(q) * ratio(7, 6, big(1 + q) * big(-12 + 49 * q + 98 * q * q))?,
        (7, 3) => s(q + 1) * big(49 * (q + 1) * (q + 1)),
        (7, 4) => big(0),
        (7, 5) => s(q) * big(49 * (q + 1) * (q + 1)),
        (7, _) => s(q) * ratio(7, 6, big(1 + q) * big(282 + 343 * q + 98 * q * q))?,
        _ => unreachable!("period table covers k"),
    };
    Ok(value)
}

/// Compares the listed residue-class formulas for `D_0(C(x)^k; n)` with
/// determinants for every `k` in the list and `n <= n_max`.
pub fn verify_modular_patterns(range: &GridRange) -> Result<Report> {
    check_k_list(range)?;
    if let Some(k) = range.k_list.iter().find(|k| !(3..=7).contains(*k)) {
        return Err(Error::InvalidArgument(format!("modular patterns cover 3 <= k <= 7, got {k}")));
    }
    let mut cells = Vec::new();
    for &k in &range.k_list {
        let period = match k {
            4 => 2,
            6 => 3,
            k => k as usize,
        };
        for n in 0..=range.n_max {
            let clause = format!("{period}q+{}", n % period);
            cells.push(Cell::evaluate(
                CellParams::new(0, n as i64).with_k(k).with_clause(clause),
                modular_pattern_value(k, n).map(Poly::from),
                conv_det(k, 0, n),
                None,
            ));
        }
    }
    Ok(Report::new(Claim::Patterns, range.clone(), cells))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn range(k_list: Vec<u32>, m_max: i64, n_max: usize) -> GridRange {
        GridRange {
            m_min: 0,
            m_max,
            n_max,
            k_list,
            b_list: vec![],
        }
    }

    fn ints(v: &[Poly]) -> Vec<i64> {
        v.iter().map(|p| i64::try_from(p.as_constant().unwrap()).unwrap()).collect()
    }

    #[test]
    fn anchor_rows() {
        let d3: Vec<Poly> = (0..15).map(|n| conv_det(3, -2, n).unwrap()).collect();
        assert_eq!(ints(&d3), [1, 0, 0, -1, -3, -3, 1, 6, 6, -1, -9, -9, 1, 12, 12]);
        let d3_fwd: Vec<Poly> = (0..15).map(|n| conv_det(3, 1, n).unwrap()).collect();
        assert_eq!(ints(&d3_fwd), [1, 3, 3, -1, -6, -6, 1, 9, 9, -1, -12, -12, 1, 15, 15]);
        let d4: Vec<Poly> = (0..15).map(|n| conv_det(4, -3, n).unwrap()).collect();
        assert_eq!(ints(&d4), [1, 0, 0, 0, 1, 4, -4, -20, 9, 56, -16, -120, 25, 220, -36]);
        let d4_fwd: Vec<Poly> = (0..15).map(|n| conv_det(4, 1, n).unwrap()).collect();
        assert_eq!(ints(&d4_fwd), [1, 4, -4, -20, 9, 56, -16, -120, 25, 220, -36, -364, 49, 560, -64]);
    }

    #[test]
    fn reflection_cells_small() {
        let r = verify_conjecture10(&range(vec![1, 2], 2, 10)).unwrap();
        assert!(r.all_pass, "{:?}", r.counterexamples);
        let flagged = r.cells.iter().filter(|c| c.note.is_some()).count();
        assert!(flagged > 0);
        assert!(r.cells.iter().filter(|c| c.note.is_some()).all(|c| c.params.n == 0 && c.pass));
    }

    #[test]
    fn conv2_is_shifted_catalan() {
        // C(x)^2 has coefficients C_{n+1}
        for s in 0..4i64 {
            for n in 0..10 {
                assert_eq!(conv_det(2, s, n).unwrap(), det_value(&SeqFamily::Catalan, s + 1, n).unwrap());
            }
        }
    }

    #[test]
    fn periodic_cells_small() {
        let r = verify_conjecture11(&range(vec![1, 2, 3], 0, 15)).unwrap();
        assert!(r.all_pass, "{:?}", r.counterexamples);
        let k1_even: Vec<_> = r
            .cells
            .iter()
            .filter(|c| c.params.k == Some(1) && c.params.clause.as_deref() == Some("even"))
            .collect();
        assert!(k1_even.iter().all(|c| c.actual == Some(Poly::one())));
        assert!(conv_det(3, 0, 2).unwrap().is_zero());
    }

    #[test]
    fn growth_cells_small() {
        let r = verify_conjecture12(&range(vec![1, 2], 2, 12)).unwrap();
        assert!(r.all_pass, "{:?}", r.counterexamples);
        let reduction: Vec<_> = r
            .cells
            .iter()
            .filter(|c| c.params.clause.as_deref() == Some("k1-reduction") && c.params.m == 1)
            .collect();
        assert!(!reduction.is_empty());
        for c in reduction {
            assert_eq!(c.actual, Some(Poly::constant(c.params.n + 1)));
        }
        assert_eq!(conv_det(4, -1, 2).unwrap(), Poly::constant(-1));
    }

    #[test]
    fn pattern_values() {
        // D_{4,0}(2n) = D_{4,0}(2n+1) = (-1)^n (n+1)
        for n in 0..10 {
            let v = BigInt::from(neg_one_pow(n as i64) * (n as i64 + 1));
            assert_eq!(modular_pattern_value(4, 2 * n).unwrap(), v);
            assert_eq!(modular_pattern_value(4, 2 * n + 1).unwrap(), v);
        }
        assert_eq!(modular_pattern_value(6, 2).unwrap(), BigInt::from(-9));
        assert_eq!(modular_pattern_value(7, 2).unwrap(), BigInt::from(-14));
        let k3: Vec<BigInt> = (0..9).map(|n| modular_pattern_value(3, n).unwrap()).collect();
        assert_eq!(k3, [1, 1, 0, -1, -1, 0, 1, 1, 0].map(BigInt::from));
        assert!(modular_pattern_value(8, 3).is_err());
    }

    #[test]
    fn patterns_small() {
        let r = verify_modular_patterns(&range(vec![3, 4, 5, 6, 7], 0, 12)).unwrap();
        assert!(r.all_pass, "{:?}", r.counterexamples);
        assert!(verify_modular_patterns(&range(vec![2], 0, 5)).is_err());
    }
}
