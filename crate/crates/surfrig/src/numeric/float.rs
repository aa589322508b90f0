//! Float kernels backed by nalgebra's SVD and symmetric eigendecomposition.

use super::{Matrix, NumericError};
use nalgebra::DMatrix;

fn to_dmatrix(m: &Matrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |r, c| m[(r, c)])
}

fn threshold(sigma: &[f64], dims: (usize, usize), rel_tol: f64) -> f64 {
    let sigma_max = sigma.iter().cloned().fold(0.0_f64, f64::max);
    rel_tol * dims.0.max(dims.1) as f64 * sigma_max
}

pub(super) fn rank(m: &Matrix<f64>, rel_tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let svd = to_dmatrix(m).svd(false, false);
    let sigma: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let thresh = threshold(&sigma, (m.rows(), m.cols()), rel_tol);
    sigma.iter().filter(|&&s| s > thresh).count()
}

/// Right nullspace basis. The matrix is padded with zero rows up to a square
/// shape first: nalgebra computes the thin SVD, which otherwise misses the
/// trailing right-singular vectors of a wide matrix.
pub(super) fn nullspace(m: &Matrix<f64>, rel_tol: f64) -> Vec<Vec<f64>> {
    let cols = m.cols();
    if cols == 0 {
        return Vec::new();
    }
    if m.rows() == 0 {
        return (0..cols)
            .map(|i| {
                let mut v = vec![0.0; cols];
                v[i] = 1.0;
                v
            })
            .collect();
    }
    let mut padded = to_dmatrix(m);
    if padded.nrows() < cols {
        padded = padded.insert_rows(padded.nrows(), cols - padded.nrows(), 0.0);
    }
    let svd = padded.clone().svd(false, true);
    let v_t = svd.v_t.expect("SVD with v_t requested");
    let sigma: Vec<f64> = svd.singular_values.iter().cloned().collect();
    let thresh = threshold(&sigma, (m.rows(), m.cols()), rel_tol);
    let mut basis = Vec::new();
    for (i, &s) in sigma.iter().enumerate() {
        if s <= thresh {
            basis.push(v_t.row(i).iter().cloned().collect());
        }
    }
    basis
}

pub(super) fn is_psd(m: &Matrix<f64>, rel_tol: f64) -> Result<bool, NumericError> {
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
    let eig = to_dmatrix(m).symmetric_eigen();
    let max_abs = eig
        .eigenvalues
        .iter()
        .map(|v| v.abs())
        .fold(0.0_f64, f64::max);
    let min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(min >= -rel_tol * max_abs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pads_wide_matrices_for_nullspace() {
        let m = Matrix::from_rows(vec![vec![1.0, 2.0, 3.0, 4.0]]);
        let ns = nullspace(&m, 1e-9);
        assert_eq!(ns.len(), 3);
        for v in ns {
            let dot: f64 = v.iter().zip([1.0, 2.0, 3.0, 4.0]).map(|(a, b)| a * b).sum();
            assert!(dot.abs() < 1e-9);
        }
    }

    #[test]
    fn rank_of_outer_product() {
        let u = [1.0, -2.0, 0.5];
        let v = [3.0, 1.0, 1.0, -1.0];
        let rows = u.iter().map(|&a| v.iter().map(|&b| a * b).collect()).collect();
        let m = Matrix::from_rows(rows);
        assert_eq!(rank(&m, 1e-9), 1);
    }
}
