//! Dense reference oracles built on a full symmetric eigendecomposition.
//!
//! These are ground truth for tests and for the `--dense` CLI paths, not
//! production routines; they refuse inputs larger than [`DENSE_ORACLE_CAP`].

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{check_len, Error, Result};
use crate::linalg::sparse::SparseSymMatrix;

pub const DENSE_ORACLE_CAP: usize = 500;

fn check_cap(n: usize) -> Result<()> {
    if n > DENSE_ORACLE_CAP {
        return Err(Error::OracleCapExceeded {
            n,
            cap: DENSE_ORACLE_CAP,
        });
    }
    Ok(())
}

/// Eigenvalues in ascending order with matching eigenvector columns.
pub fn dense_eigen(a: &SparseSymMatrix) -> Result<(Vec<f64>, DMatrix<f64>)> {
    check_cap(a.n())?;
    let eig = SymmetricEigen::new(a.to_dense());
    let mut order: Vec<usize> = (0..a.n()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(a.n(), a.n(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((vals, vecs))
}

pub fn dense_eigs_ref(a: &SparseSymMatrix) -> Result<Vec<f64>> {
    Ok(dense_eigen(a)?.0)
}

/// `U f(Λ) U^T` for a scalar function `f`.
pub fn dense_fn_ref(a: &SparseSymMatrix, f: impl Fn(f64) -> f64) -> Result<DMatrix<f64>> {
    let (vals, u) = dense_eigen(a)?;
    let fl = DVector::from_iterator(vals.len(), vals.iter().map(|&l| f(l)));
    let scaled = DMatrix::from_fn(u.nrows(), u.ncols(), |r, c| u[(r, c)] * fl[c]);
    Ok(scaled * u.transpose())
}

/// `exp(-A)`.
pub fn dense_expm_ref(a: &SparseSymMatrix) -> Result<DMatrix<f64>> {
    dense_fn_ref(a, |x| (-x).exp())
}

pub fn dense_expm_apply_ref(a: &SparseSymMatrix, v: &[f64]) -> Result<Vec<f64>> {
    check_len("vector", v.len(), "matrix dimension", a.n())?;
    let e = dense_expm_ref(a)?;
    Ok((e * DVector::from_column_slice(v)).as_slice().to_vec())
}

pub fn dense_fn_apply_ref(a: &SparseSymMatrix, f: impl Fn(f64) -> f64, v: &[f64]) -> Result<Vec<f64>> {
    check_len("vector", v.len(), "matrix dimension", a.n())?;
    let m = dense_fn_ref(a, f)?;
    Ok((m * DVector::from_column_slice(v)).as_slice().to_vec())
}

/// Solves `A x = v` by eigendecomposition; rejects numerically singular `A`.
pub fn dense_solve_ref(a: &SparseSymMatrix, v: &[f64]) -> Result<Vec<f64>> {
    check_len("vector", v.len(), "matrix dimension", a.n())?;
    let (vals, u) = dense_eigen(a)?;
    let scale = vals.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    if scale == 0.0 || vals.iter().any(|l| l.abs() <= scale * 1e-14 * a.n() as f64) {
        return Err(Error::Singular);
    }
    let coeffs = u.transpose() * DVector::from_column_slice(v);
    let y = DVector::from_iterator(vals.len(), coeffs.iter().zip(&vals).map(|(c, l)| c / l));
    Ok((u * y).as_slice().to_vec())
}
