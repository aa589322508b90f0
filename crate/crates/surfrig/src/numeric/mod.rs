//! Scalar backends and dense linear-algebra kernels.
//!
//! Two backends live behind the same interface: exact arbitrary-precision
//! rationals ([`num_rational::BigRational`]) and `f64` with relative
//! tolerances. Exact kernels (fraction-free elimination, rational RREF,
//! pivoted LDLᵀ) are implemented in [`exact`]; the float kernels are
//! SVD/eigendecomposition based and build on `nalgebra`.

mod exact;
mod float;
mod matrix;

pub use matrix::Matrix;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use std::fmt;
use std::ops::{Div, Neg, Sub};
use thiserror::Error;

/// Default relative tolerance for float rank/nullspace thresholding.
///
/// A singular value counts toward the rank when it exceeds
/// `tol * max(rows, cols) * sigma_max`. Overridable per call through the
/// `*_with_tol` methods on [`Matrix<f64>`].
pub const DEFAULT_REL_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumericError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
}

/// Arithmetic required to *build* the matrices of this crate.
///
/// Implemented by `BigRational` (exact) and `f64` (tolerance context). The
/// trait deliberately stays small; everything rank-related lives in
/// [`LinAlg`].
pub trait Scalar:
    Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Signed
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
    + std::iter::Sum<Self>
    + 'static
{
    /// True for backends where equality is decidable.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Whether `self`, viewed as a residual at magnitude `scale`, counts as
    /// zero. Exact backend: literal zero test. Float backend:
    /// `|self| <= 1e-9 * max(1, |scale|)`.
    fn is_negligible(&self, scale: &Self) -> bool;

    /// Random coefficient for stress-space sampling. Exact: a small integer;
    /// float: uniform on (-1, 1).
    fn sample_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Self;

    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_negligible(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn sample_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_int(rng.gen_range(-10i64..=10))
    }

    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn is_negligible(&self, scale: &Self) -> bool {
        self.abs() <= DEFAULT_REL_TOL * scale.abs().max(1.0)
    }

    fn sample_coefficient<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen_range(-1.0..1.0)
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

/// Backend-specific dense kernels: rank, nullspace, cokernel, PSD test.
pub trait LinAlg: Scalar {
    /// Rank of `m`. Exact backend: fraction-free Gaussian elimination over
    /// the integers after clearing row denominators. Float backend: number
    /// of singular values above `DEFAULT_REL_TOL * max(rows, cols) * sigma_max`.
    fn rank(m: &Matrix<Self>) -> usize;

    /// Basis of `{x : m x = 0}`, as column vectors of length `cols`.
    fn nullspace(m: &Matrix<Self>) -> Vec<Vec<Self>>;

    /// Basis of `{x : x m = 0}`, as row vectors of length `rows`.
    fn cokernel(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        Self::nullspace(&m.transpose())
    }

    /// Positive semidefiniteness of a square symmetric matrix. Exact
    /// backend: LDLᵀ with symmetric pivoting, true iff all pivots are
    /// nonnegative. Float backend: smallest eigenvalue >= -tol * ||m||.
    fn is_psd(m: &Matrix<Self>) -> Result<bool, NumericError>;
}

impl LinAlg for BigRational {
    fn rank(m: &Matrix<Self>) -> usize {
        exact::rank_fraction_free(m)
    }

    fn nullspace(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        exact::nullspace(m)
    }

    fn is_psd(m: &Matrix<Self>) -> Result<bool, NumericError> {
        exact::is_psd(m)
    }
}

impl LinAlg for f64 {
    fn rank(m: &Matrix<Self>) -> usize {
        float::rank(m, DEFAULT_REL_TOL)
    }

    fn nullspace(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        float::nullspace(m, DEFAULT_REL_TOL)
    }

    fn is_psd(m: &Matrix<Self>) -> Result<bool, NumericError> {
        float::is_psd(m, DEFAULT_REL_TOL)
    }
}

impl Matrix<f64> {
    /// Rank with an explicit relative tolerance instead of [`DEFAULT_REL_TOL`].
    pub fn rank_with_tol(&self, rel_tol: f64) -> usize {
        float::rank(self, rel_tol)
    }

    pub fn nullspace_with_tol(&self, rel_tol: f64) -> Vec<Vec<f64>> {
        float::nullspace(self, rel_tol)
    }

    pub fn cokernel_with_tol(&self, rel_tol: f64) -> Vec<Vec<f64>> {
        float::nullspace(&self.transpose(), rel_tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::from_ratio(n, d)
    }

    #[test]
    fn rank_identity_and_zero() {
        let id: Matrix<BigRational> = Matrix::identity(3);
        assert_eq!(id.rank(), 3);
        let z: Matrix<BigRational> = Matrix::zeros(4, 2);
        assert_eq!(z.rank(), 0);

        let idf: Matrix<f64> = Matrix::identity(3);
        assert_eq!(idf.rank(), 3);
        let zf: Matrix<f64> = Matrix::zeros(4, 2);
        assert_eq!(zf.rank(), 0);
    }

    #[test]
    fn nullspace_of_identity_is_empty() {
        let id: Matrix<BigRational> = Matrix::identity(4);
        assert!(id.nullspace_basis().is_empty());
        let idf: Matrix<f64> = Matrix::identity(4);
        assert!(idf.nullspace_basis().is_empty());
    }

    #[test]
    fn cokernel_of_zero_row() {
        // single zero row: one-dimensional left nullspace
        let m = Matrix::from_rows(vec![vec![rat(0, 1), rat(0, 1)]]);
        let basis = m.cokernel_basis();
        assert_eq!(basis.len(), 1);
        assert!(!basis[0][0].is_zero());
    }

    #[test]
    fn wide_row_has_two_dim_nullspace() {
        let m = Matrix::from_rows(vec![vec![1.0, 0.0, 0.0]]);
        let basis = m.nullspace_basis();
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let prod: f64 = v[0];
            assert!(prod.abs() < 1e-12);
        }
    }

    #[test]
    fn rank_rational_rectangular() {
        let m = Matrix::from_rows(vec![
            vec![rat(1, 2), rat(1, 3), rat(0, 1)],
            vec![rat(1, 1), rat(2, 3), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(5, 7)],
        ]);
        // row 2 = 2 * row 1
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn psd_examples() {
        let id: Matrix<BigRational> = Matrix::identity(2);
        assert_eq!(id.is_psd(), Ok(true));

        let mut diag: Matrix<BigRational> = Matrix::zeros(2, 2);
        diag[(0, 0)] = rat(1, 1);
        diag[(1, 1)] = rat(-1, 1);
        assert_eq!(diag.is_psd(), Ok(false));

        // Laplacian of the triangle: eigenvalues {0, 3, 3}
        let lap = Matrix::from_rows(vec![
            vec![rat(2, 1), rat(-1, 1), rat(-1, 1)],
            vec![rat(-1, 1), rat(2, 1), rat(-1, 1)],
            vec![rat(-1, 1), rat(-1, 1), rat(2, 1)],
        ]);
        assert_eq!(lap.is_psd(), Ok(true));
        let lap_f = lap.map(|v| v.to_f64_lossy());
        assert_eq!(lap_f.is_psd(), Ok(true));
    }

    #[test]
    fn psd_rejects_nonsymmetric() {
        let m = Matrix::from_rows(vec![vec![rat(1, 1), rat(2, 1)], vec![rat(0, 1), rat(1, 1)]]);
        assert_eq!(m.is_psd(), Err(NumericError::NotSymmetric));
    }

    #[test]
    fn psd_zero_diagonal_with_offdiagonal_entry() {
        // [[0, 1], [1, 0]] has eigenvalues +-1
        let mut m: Matrix<BigRational> = Matrix::zeros(2, 2);
        m[(0, 1)] = rat(1, 1);
        m[(1, 0)] = rat(1, 1);
        assert_eq!(m.is_psd(), Ok(false));
        let mut mf: Matrix<f64> = Matrix::zeros(2, 2);
        mf[(0, 1)] = 1.0;
        mf[(1, 0)] = 1.0;
        assert_eq!(mf.is_psd(), Ok(false));
    }

    #[test]
    fn basis_vectors_annihilate_matrix() {
        let m = Matrix::from_rows(vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1), rat(4, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1), rat(8, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 1), rat(0, 1)],
        ]);
        for v in m.nullspace_basis() {
            let prod = m.mul_col_vec(&v);
            assert!(prod.iter().all(|x| x.is_zero()));
        }
        for v in m.cokernel_basis() {
            let prod = m.row_vec_mul(&v);
            assert!(prod.iter().all(|x| x.is_zero()));
        }
        assert_eq!(m.rank() + m.nullspace_basis().len(), m.cols());
        assert_eq!(m.rank() + m.cokernel_basis().len(), m.rows());
    }

    #[test]
    fn float_rank_tolerance_override() {
        let m = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, 1e-7]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.rank_with_tol(1e-6), 1);
    }
}
