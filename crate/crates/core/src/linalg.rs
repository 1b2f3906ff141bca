//! Exact Gaussian elimination over a field.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::Scalar;
use crate::error::{Error, Result};

pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// `rhs` is nonzero.
    fn div(&self, rhs: &Self) -> Self;
    /// Pivot cost; lower is preferred.
    fn weight(&self) -> u64;
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn weight(&self) -> u64 {
        // total degree first, term count as tie-break
        (u64::from(Scalar::weight(self)) << 32) + self.size() as u64
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn weight(&self) -> u64 {
        self.numer().abs().bits() + self.denom().bits()
    }
}

/// Pivot selection for [`solve`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pivoting {
    /// Full pivoting on the cheapest nonzero entry of the remaining block.
    LowestWeight,
    /// First nonzero entry in column-major scan order; used to cross-check uniqueness.
    FirstNonzero,
}

fn choose_pivot<F: Field>(m: &[Vec<F>], k: usize, ncols: usize, strategy: Pivoting) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, u64)> = None;
    for c in k..ncols {
        for (r, row) in m.iter().enumerate().skip(k) {
            let v = &row[c];
            if v.is_zero() {
                continue;
            }
            if strategy == Pivoting::FirstNonzero {
                return Some((r, c));
            }
            let w = v.weight();
            if best.is_none_or(|(_, _, bw)| w < bw) {
                best = Some((r, c, w));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Solves `A X = B` for the unique `X` (`A` is `m × n` with `m ≥ n`, `B` is `m × k`).
///
/// Fails with [`Error::Singular`] when `A` has rank below `n`, and with
/// [`Error::Inconsistent`] when an overdetermined system has no solution.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[Vec<F>], strategy: Pivoting) -> Result<Vec<Vec<F>>> {
    let m = a.len();
    if b.len() != m {
        return Err(Error::Internal("right-hand side row count mismatch".into()));
    }
    let n = a.first().map_or(0, Vec::len);
    let k = b.first().map_or(0, Vec::len);
    if m < n {
        return Err(Error::Singular);
    }
    let mut rows: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| {
            assert_eq!(ra.len(), n, "ragged coefficient matrix");
            ra.iter().chain(rb.iter()).cloned().collect()
        })
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    for step in 0..n {
        let (r, c) = choose_pivot(&rows, step, n, strategy).ok_or(Error::Singular)?;
        rows.swap(step, r);
        if c != step {
            for row in rows.iter_mut() {
                row.swap(step, c);
            }
            perm.swap(step, c);
        }
        let pivot = rows[step][step].clone();
        let prow: Vec<F> = rows[step].iter().map(|v| v.div(&pivot)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == step || row[step].is_zero() {
                continue;
            }
            let factor = row[step].clone();
            for (j, v) in row.iter_mut().enumerate().skip(step) {
                if !prow[j].is_zero() {
                    *v = v.sub(&factor.mul(&prow[j]));
                }
            }
        }
        rows[step] = prow;
    }
    if rows[n..].iter().any(|row| row[n..].iter().any(|v| !v.is_zero())) {
        return Err(Error::Inconsistent);
    }
    let mut x = vec![vec![F::zero(); k]; n];
    for (step, &col) in perm.iter().enumerate() {
        x[col] = rows[step][n..].to_vec();
    }
    Ok(x)
}

/// Basis of `{ v : A v = 0 }`, one vector per free column of the reduced row echelon form.
pub fn nullspace<F: Field>(a: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut rows: Vec<Vec<F>> = a.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].weight())
        else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        let prow: Vec<F> = rows[r].iter().map(|v| v.div(&pivot)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (j, v) in row.iter_mut().enumerate().skip(c) {
                if !prow[j].is_zero() {
                    *v = v.sub(&factor.mul(&prow[j]));
                }
            }
        }
        rows[r] = prow;
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero(); ncols];
        v[free] = F::one();
        for (row, &pc) in rows.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[pc] = F::zero().sub(&row[free]);
            }
        }
        basis.push(v);
    }
    basis
}
