//! Determinant engines over an integral domain with exact division.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_ring::{exact_div_int, Poly};

/// Ring operations the engines need. Implemented for [`BigInt`] (the
/// integer fast path) and [`Poly`].
pub trait DetRing: Clone + PartialEq + std::fmt::Display
where
    for<'a> &'a Self: Add<&'a Self, Output = Self>
        + Sub<&'a Self, Output = Self>
        + Mul<&'a Self, Output = Self>
        + Neg<Output = Self>,
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn exact_div(&self, divisor: &Self) -> Result<Self>;
}

impl DetRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        exact_div_int(self, divisor)
    }
}

impl DetRing for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn exact_div(&self, divisor: &Self) -> Result<Self> {
        Poly::exact_div(self, divisor)
    }
}

/// Largest dimension the cofactor engine accepts.
pub const COFACTOR_MAX_DIM: usize = 8;

/// Laplace expansion along successive rows, memoized over column subsets.
///
/// `minor[S]` is the determinant of the last `|S|` rows restricted to the
/// columns in `S`, so the full determinant is `minor[all]`. The work is
/// `O(2^n n)` ring operations instead of `n!`.
pub fn cofactor<R>(rows: &[Vec<R>]) -> Result<R>
where
    R: DetRing,
    for<'a> &'a R: Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R> + Neg<Output = R>,
{
    let n = rows.len();
    if n > COFACTOR_MAX_DIM {
        return Err(Error::DimensionTooLarge { dim: n, max: COFACTOR_MAX_DIM });
    }
    let full = (1usize << n) - 1;
    let mut minor: Vec<Option<R>> = vec![None; full + 1];
    minor[0] = Some(R::one());
    // subsets in order of increasing size
    let mut masks: Vec<usize> = (1..=full).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let size = mask.count_ones() as usize;
        let row = &rows[n - size];
        let mut acc = R::zero();
        let mut position = 0;
        for (col, entry) in row.iter().enumerate() {
            if mask & (1 << col) == 0 {
                continue;
            }
            if !entry.is_zero() {
                let sub = minor[mask & !(1 << col)].as_ref().expect("smaller subsets first");
                let term = entry * sub;
                acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            position += 1;
        }
        minor[mask] = Some(acc);
    }
    Ok(minor[full].take().expect("full mask computed"))
}

/// Fraction-free Gaussian elimination. Every division by the previous pivot
/// is exact; a remainder is reported as [`Error::NonExactDivision`].
pub fn bareiss<R>(mut a: Vec<Vec<R>>) -> Result<R>
where
    R: DetRing,
    for<'a> &'a R: Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R> + Neg<Output = R>,
{
    let n = a.len();
    if n == 0 {
        return Ok(R::one());
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(R::zero());
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -&d } else { d })
}

/// Dodgson condensation.
///
/// Each round replaces the current matrix by its connected 2x2 minors,
/// divided by the interior of the matrix two rounds back. Returns `None`
/// when one of those divisors is zero.
pub fn condensation<R>(a: Vec<Vec<R>>) -> Result<Option<R>>
where
    R: DetRing,
    for<'a> &'a R: Add<&'a R, Output = R> + Sub<&'a R, Output = R> + Mul<&'a R, Output = R> + Neg<Output = R>,
{
    let n = a.len();
    if n == 0 {
        return Ok(Some(R::one()));
    }
    let mut prev: Vec<Vec<R>> = vec![vec![R::one(); n + 1]; n + 1];
    let mut cur = a;
    for size in (1..n).rev() {
        let mut next = Vec::with_capacity(size);
        for i in 0..size {
            let mut row = Vec::with_capacity(size);
            for j in 0..size {
                let divisor = &prev[i + 1][j + 1];
                if divisor.is_zero() {
                    return Ok(None);
                }
                let num = &(&cur[i][j] * &cur[i + 1][j + 1]) - &(&cur[i][j + 1] * &cur[i + 1][j]);
                row.push(num.exact_div(divisor)?);
            }
            next.push(row);
        }
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(Some(cur[0][0].clone()))
}
