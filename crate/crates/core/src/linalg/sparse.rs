//! Symmetric sparse matrices stored as a compressed upper triangle.

use crate::error::{check_len, Error, Result};

/// A linear operator that is symmetric with respect to the standard inner
/// product. Every Krylov method and matrix-function routine in this crate is
/// written against this trait so scaled or shifted views never need to be
/// materialized.
pub trait SymOperator {
    fn dim(&self) -> usize;

    /// Writes `A x` into `y`. Both slices have length `dim()`.
    fn apply(&self, x: &[f64], y: &mut [f64]);

    fn apply_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.dim()];
        self.apply(x, &mut y);
        y
    }
}

impl<T: SymOperator + ?Sized> SymOperator for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        (**self).apply(x, y)
    }
}

/// The view `scale * A + shift * I` of an operator.
#[derive(Debug, Clone, Copy)]
pub struct Shifted<O> {
    pub op: O,
    pub scale: f64,
    pub shift: f64,
}

impl<O: SymOperator> Shifted<O> {
    pub fn new(op: O, scale: f64, shift: f64) -> Self {
        Shifted { op, scale, shift }
    }

    pub fn scaled(op: O, scale: f64) -> Self {
        Shifted { op, scale, shift: 0.0 }
    }
}

impl<O: SymOperator> SymOperator for Shifted<O> {
    fn dim(&self) -> usize {
        self.op.dim()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.op.apply(x, y);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = self.scale * *yi + self.shift * xi;
        }
    }
}

/// Symmetric sparse matrix.
///
/// Each unordered pair `{i, j}` is stored once (as `i <= j`) in a compressed
/// row layout; `apply` mirrors off-diagonal entries on the fly. Traversal order
/// is fixed, so `matvec` is bit-reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl SparseSymMatrix {
    /// Builds a matrix from `(i, j, value)` triplets. Each triplet sets both
    /// `A[i][j]` and `A[j][i]`; repeated unordered pairs are summed. Explicit
    /// zeros are kept out of the structure.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut canon = Vec::with_capacity(triplets.len());
        for &(i, j, v) in triplets {
            if i >= n || j >= n {
                return Err(Error::InvalidMatrix(format!("entry ({i}, {j}) outside a {n}x{n} matrix")));
            }
            if !v.is_finite() {
                return Err(Error::InvalidMatrix(format!("entry ({i}, {j}) is not finite")));
            }
            canon.push((i.min(j), i.max(j), v));
        }
        canon.sort_by_key(|e| (e.0, e.1));

        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(canon.len());
        let mut vals: Vec<f64> = Vec::with_capacity(canon.len());
        let mut rows = Vec::with_capacity(canon.len());
        for (i, j, v) in canon {
            if let (Some(&last_row), Some(&last_col)) = (rows.last(), cols.last()) {
                if last_row == i && last_col == j {
                    *vals.last_mut().unwrap() += v;
                    continue;
                }
            }
            rows.push(i);
            cols.push(j);
            vals.push(v);
        }
        // drop entries that cancelled to zero
        let mut keep_rows = Vec::with_capacity(rows.len());
        let mut keep_cols = Vec::with_capacity(rows.len());
        let mut keep_vals = Vec::with_capacity(rows.len());
        for ((i, j), v) in rows.into_iter().zip(cols).zip(vals) {
            if v != 0.0 {
                keep_rows.push(i);
                keep_cols.push(j);
                keep_vals.push(v);
            }
        }
        for &i in &keep_rows {
            row_ptr[i + 1] += 1;
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(SparseSymMatrix {
            n,
            row_ptr,
            cols: keep_cols,
            vals: keep_vals,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n]).expect("finite diagonal")
    }

    pub fn zeros(n: usize) -> Self {
        SparseSymMatrix {
            n,
            row_ptr: vec![0; n + 1],
            cols: Vec::new(),
            vals: Vec::new(),
        }
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let trip: Vec<_> = diag.iter().enumerate().map(|(i, &v)| (i, i, v)).collect();
        Self::from_triplets(diag.len(), &trip)
    }

    /// Builds from a dense row-major square array, reading the upper triangle.
    pub fn from_dense_upper(n: usize, data: &[f64]) -> Result<Self> {
        check_len("dense data", data.len(), "n*n", n * n)?;
        let mut trip = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = data[i * n + j];
                if v != 0.0 {
                    trip.push((i, j, v));
                }
            }
        }
        Self::from_triplets(n, &trip)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored entries (each unordered pair counted once).
    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Stored entries as `(row, col, value)` with `row <= col`, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| {
            (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |k| (i, self.cols[k], self.vals[k]))
        })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (r, c) = (i.min(j), i.max(j));
        let row = &self.cols[self.row_ptr[r]..self.row_ptr[r + 1]];
        match row.binary_search(&c) {
            Ok(k) => self.vals[self.row_ptr[r] + k],
            Err(_) => 0.0,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// `A v`, checking dimensions.
    pub fn matvec(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_len("vector", v.len(), "matrix dimension", self.n)?;
        Ok(self.apply_vec(v))
    }

    /// Maximum absolute row sum; an upper bound on the spectral norm.
    pub fn norm_bound(&self) -> f64 {
        let mut rows = vec![0.0f64; self.n];
        for (i, j, v) in self.entries() {
            rows[i] += v.abs();
            if i != j {
                rows[j] += v.abs();
            }
        }
        rows.into_iter().fold(0.0, f64::max)
    }

    /// A new matrix `scale * self + shift * I`.
    pub fn affine(&self, scale: f64, shift: f64) -> Self {
        let mut trip: Vec<_> = self.entries().map(|(i, j, v)| (i, j, scale * v)).collect();
        if shift != 0.0 {
            trip.extend((0..self.n).map(|i| (i, i, shift)));
        }
        Self::from_triplets(self.n, &trip).expect("finite entries")
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        let mut m = nalgebra::DMatrix::zeros(self.n, self.n);
        for (i, j, v) in self.entries() {
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
        m
    }
}

impl SymOperator for SparseSymMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        assert_eq!(x.len(), self.n, "operand length");
        assert_eq!(y.len(), self.n, "output length");
        y.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..self.n {
            let xi = x[i];
            let mut acc = 0.0;
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                let j = self.cols[k];
                let v = self.vals[k];
                acc += v * x[j];
                if j != i {
                    y[j] += v * xi;
                }
            }
            y[i] += acc;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_matvec_is_identity() {
        let a = SparseSymMatrix::identity(4);
        let v = vec![1.0, -2.0, 3.5, 0.25];
        assert_eq!(a.matvec(&v).unwrap(), v);
    }

    #[test]
    fn swap_matrix() {
        let a = SparseSymMatrix::from_triplets(2, &[(0, 1, 1.0)]).unwrap();
        assert_eq!(a.matvec(&[1.0, 0.0]).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn duplicate_pairs_are_summed() {
        let a = SparseSymMatrix::from_triplets(3, &[(0, 2, 1.0), (2, 0, 0.5), (1, 1, 2.0)]).unwrap();
        assert_eq!(a.nnz(), 2);
        assert_eq!(a.get(0, 2), 1.5);
        assert_eq!(a.get(2, 0), 1.5);
    }

    #[test]
    fn rejects_out_of_range_and_nonfinite() {
        assert!(SparseSymMatrix::from_triplets(2, &[(0, 2, 1.0)]).is_err());
        assert!(SparseSymMatrix::from_triplets(2, &[(0, 1, f64::NAN)]).is_err());
    }

    #[test]
    fn matvec_dimension_mismatch() {
        let a = SparseSymMatrix::identity(3);
        assert!(matches!(a.matvec(&[1.0, 2.0]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn shifted_view() {
        let a = SparseSymMatrix::from_diagonal(&[1.0, 2.0]).unwrap();
        let s = Shifted::new(&a, 3.0, 1.0);
        assert_eq!(s.apply_vec(&[1.0, 1.0]), vec![4.0, 7.0]);
    }
}
