//! Exact kernels over arbitrary-precision rationals.
//!
//! Rank uses fraction-free (Bareiss) elimination over the integers after
//! clearing row denominators; nullspace/cokernel use rational Gauss-Jordan.
//! Pivoting is deterministic (first nonzero entry in column order for the
//! eliminations, largest diagonal entry for the LDLᵀ PSD test) so results
//! are reproducible across platforms.

use super::{Matrix, NumericError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Rank by fraction-free Gaussian elimination (Bareiss). The exact division
/// in the update step keeps all intermediate entries integral.
pub(super) fn rank_fraction_free(m: &Matrix<BigRational>) -> usize {
    if m.is_empty() {
        return 0;
    }
    let (rows, cols) = (m.rows(), m.cols());
    // clear denominators row by row; rank is unchanged
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|r| {
            let lcm = m
                .row(r)
                .iter()
                .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            m.row(r)
                .iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot_row) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot_row);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][j] * &a[rank][c] - &a[r][c] * &a[rank][j];
                a[r][j] = num / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
fn rref(m: &Matrix<BigRational>) -> (Matrix<BigRational>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pivot_row) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if pivot_row != r {
            for j in 0..cols {
                let tmp = a[(r, j)].clone();
                a[(r, j)] = a[(pivot_row, j)].clone();
                a[(pivot_row, j)] = tmp;
            }
        }
        let inv = a[(r, c)].clone();
        for j in c..cols {
            a[(r, j)] = a[(r, j)].clone() / inv.clone();
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                let sub = &factor * &a[(r, j)];
                a[(i, j)] = a[(i, j)].clone() - sub;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub(super) fn nullspace(m: &Matrix<BigRational>) -> Vec<Vec<BigRational>> {
    let cols = m.cols();
    if m.rows() == 0 {
        // every standard basis vector is in the kernel
        return (0..cols)
            .map(|i| {
                let mut v = vec![BigRational::zero(); cols];
                v[i] = BigRational::one();
                v
            })
            .collect();
    }
    let (red, pivots) = rref(m);
    let pivot_set: Vec<Option<usize>> = {
        let mut set = vec![None; cols];
        for (row, &col) in pivots.iter().enumerate() {
            set[col] = Some(row);
        }
        set
    };
    let mut basis = Vec::with_capacity(cols - pivots.len());
    for free in 0..cols {
        if pivot_set[free].is_some() {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (col, row) in pivot_set.iter().enumerate() {
            if let Some(row) = row {
                v[col] = -red[(*row, free)].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// LDLᵀ-style PSD test with symmetric pivoting on the largest diagonal
/// entry. A symmetric matrix is PSD iff the elimination never meets a
/// negative diagonal entry and any all-zero-diagonal remainder is the zero
/// matrix.
pub(super) fn is_psd(m: &Matrix<BigRational>) -> Result<bool, NumericError> {
    if m.is_empty() {
        return Err(NumericError::Empty);
    }
    if m.rows() != m.cols() {
        return Err(NumericError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_symmetric() {
        return Err(NumericError::NotSymmetric);
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let &k = active
            .iter()
            .max_by(|&&i, &&j| a[(i, i)].cmp(&a[(j, j)]))
            .expect("non-empty active set");
        let pivot = a[(k, k)].clone();
        if pivot.is_negative() {
            return Ok(false);
        }
        if pivot.is_zero() {
            // the largest remaining diagonal entry is zero; PSD requires the
            // whole remaining block to vanish
            let all_zero = active
                .iter()
                .all(|&i| active.iter().all(|&j| a[(i, j)].is_zero()));
            return Ok(all_zero);
        }
        active.retain(|&i| i != k);
        for ii in 0..active.len() {
            let i = active[ii];
            let factor = &a[(i, k)] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for jj in ii..active.len() {
                let j = active[jj];
                let sub = &factor * &a[(k, j)];
                let updated = &a[(i, j)] - &sub;
                a[(i, j)] = updated.clone();
                a[(j, i)] = updated;
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Scalar;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn bareiss_matches_rref_rank() {
        let m = Matrix::from_rows(vec![
            vec![rat(2, 3), rat(1, 5), rat(7, 2), rat(0, 1)],
            vec![rat(4, 3), rat(2, 5), rat(7, 1), rat(0, 1)],
            vec![rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)],
            vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
        ]);
        assert_eq!(rank_fraction_free(&m), 2);
        let (_, pivots) = rref(&m);
        assert_eq!(pivots.len(), 2);
    }

    #[test]
    fn psd_semidefinite_with_kernel() {
        // [[1,-1],[-1,1]] is PSD with a kernel
        let m = Matrix::from_rows(vec![vec![rat(1, 1), rat(-1, 1)], vec![rat(-1, 1), rat(1, 1)]]);
        assert_eq!(is_psd(&m), Ok(true));
    }

    #[test]
    fn psd_detects_hidden_negative_direction() {
        // [[1,2],[2,1]] has eigenvalues 3 and -1
        let m = Matrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(1, 1)]]);
        assert_eq!(is_psd(&m), Ok(false));
    }
}
