//! Dense and sparse real matrices plus the numerical kernels built on them.
//!
//! Everything downstream (graph normalizations, clustering, completion,
//! retrieval) consumes these two value types. Both are immutable once built
//! and validate their invariants on construction: entries are finite, sparse
//! indices are in range and unique, and explicit zeros are never stored.

mod eigen;
mod kmeans;
pub mod mtx;
mod nmf;
mod svd;

pub use eigen::{symmetric_eigen, symmetric_eigen_topk, EigenPairs};
pub use kmeans::{kmeans, kmeans_fit, KMeansFit, KMeansOptions};
pub use nmf::{nmf_factorize, nmf_factorize_with, NmfFactors, NmfOptions};
pub use svd::{full_svd, rank_k_reconstruct, truncated_svd, truncated_svd_dense, SvdFactors};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row-major dense matrix of finite reals.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagonal(&vec![1.0; n])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// Builds a matrix from row slices; all rows must have equal length.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), cols, data)
    }

    /// Builds a matrix from column vectors of equal length.
    pub fn from_columns<C: AsRef<[f64]>>(columns: &[C]) -> Result<Self> {
        let rows = columns.first().map_or(0, |c| c.as_ref().len());
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(Error::Shape(format!(
                    "column {j} has {} entries, expected {rows}",
                    c.len()
                )));
            }
            for (i, &v) in c.iter().enumerate() {
                m.data[i * cols + j] = v;
            }
        }
        if let Some(pos) = m.data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / cols.max(1),
                col: pos % cols.max(1),
            });
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn sub(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "{:?} minus {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: f64) -> DenseMatrix {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Largest |h_ij - h_ji| and where it occurs. Requires a square matrix.
    pub fn max_asymmetry(&self) -> (f64, usize, usize) {
        let mut worst = (0.0, 0, 0);
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let d = (self.get(i, j) - self.get(j, i)).abs();
                if d > worst.0 {
                    worst = (d, i, j);
                }
            }
        }
        worst
    }

    /// Rejects non-square matrices and those whose asymmetry exceeds
    /// `tol * max(1, max|h|)`.
    pub fn check_symmetric(&self, tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        let (d, row, col) = self.max_asymmetry();
        if d > tol * self.max_abs().max(1.0) {
            return Err(Error::NotSymmetric {
                max_asymmetry: d,
                row,
                col,
            });
        }
        Ok(())
    }

    /// Keeps the first `k` columns.
    pub fn leading_columns(&self, k: usize) -> DenseMatrix {
        let k = k.min(self.cols);
        let mut out = Self::zeros(self.rows, k);
        for i in 0..self.rows {
            out.row_mut(i).copy_from_slice(&self.row(i)[..k]);
        }
        out
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut triplets = Vec::new();
        for i in 0..self.rows {
            for (j, &v) in self.row(i).iter().enumerate() {
                if v != 0.0 {
                    triplets.push((i, j, v));
                }
            }
        }
        SparseMatrix::from_sorted_unchecked(self.rows, self.cols, triplets)
    }
}

/// Compressed sparse row matrix of finite, nonzero reals.
///
/// Entries are kept sorted by (row, col). Explicit zeros passed to the
/// constructors are dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        mut triplets: Vec<(usize, usize, f64)>,
    ) -> Result<Self> {
        for &(i, j, v) in &triplets {
            if i >= rows || j >= cols {
                return Err(Error::Shape(format!(
                    "entry ({i}, {j}) outside a {rows}x{cols} matrix"
                )));
            }
            if !v.is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
        triplets.sort_by_key(|&(i, j, _)| (i, j));
        if let Some(w) = triplets
            .windows(2)
            .find(|w| w[0].0 == w[1].0 && w[0].1 == w[1].1)
        {
            return Err(Error::DuplicateEntry {
                row: w[0].0,
                col: w[0].1,
            });
        }
        triplets.retain(|t| t.2 != 0.0);
        Ok(Self::from_sorted_unchecked(rows, cols, triplets))
    }

    fn from_sorted_unchecked(rows: usize, cols: usize, triplets: Vec<(usize, usize, f64)>) -> Self {
        let mut row_ptr = vec![0usize; rows + 1];
        for &(i, _, _) in &triplets {
            row_ptr[i + 1] += 1;
        }
        for i in 0..rows {
            row_ptr[i + 1] += row_ptr[i];
        }
        let (col_idx, values) = triplets.into_iter().map(|(_, j, v)| (j, v)).unzip();
        Self {
            rows,
            cols,
            row_ptr,
            col_idx,
            values,
        }
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        m.to_sparse()
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_sorted_unchecked(rows, cols, Vec::new())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Nonzeros of row `i` as parallel (column, value) slices.
    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[r.clone()], &self.values[r])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        cols.binary_search(&j).map_or(0.0, |p| vals[p])
    }

    /// Iterates (row, col, value) in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows).flat_map(move |i| {
            let (c, v) = self.row(i);
            c.iter().zip(v).map(move |(&j, &x)| (i, j, x))
        })
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.iter() {
            m.set(i, j, v);
        }
        m
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t: Vec<(usize, usize, f64)> = self.iter().map(|(i, j, v)| (j, i, v)).collect();
        t.sort_by_key(|&(i, j, _)| (i, j));
        Self::from_sorted_unchecked(self.cols, self.rows, t)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).1.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.cols];
        for (_, j, v) in self.iter() {
            s[j] += v;
        }
        s
    }

    pub fn row_norms(&self) -> Vec<f64> {
        (0..self.rows)
            .map(|i| self.row(i).1.iter().map(|v| v * v).sum::<f64>().sqrt())
            .collect()
    }

    /// Returns the first negative entry, if any.
    pub fn find_negative(&self) -> Option<(usize, usize, f64)> {
        self.iter().find(|&(_, _, v)| v < 0.0)
    }

    pub fn ensure_nonnegative(&self) -> Result<()> {
        match self.find_negative() {
            Some((row, col, value)) => Err(Error::Negative { row, col, value }),
            None => Ok(()),
        }
    }

    /// Applies `f` to every stored value; results equal to zero are dropped.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> SparseMatrix {
        let t = self
            .iter()
            .map(|(i, j, v)| (i, j, f(v)))
            .filter(|t| t.2 != 0.0)
            .collect();
        Self::from_sorted_unchecked(self.rows, self.cols, t)
    }

    /// Multiplies column `j` by `factors[j]`.
    pub fn scale_columns(&self, factors: &[f64]) -> Result<SparseMatrix> {
        if factors.len() != self.cols {
            return Err(Error::LengthMismatch {
                left: factors.len(),
                right: self.cols,
            });
        }
        let t = self
            .iter()
            .map(|(i, j, v)| (i, j, v * factors[j]))
            .filter(|t| t.2 != 0.0)
            .collect();
        Ok(Self::from_sorted_unchecked(self.rows, self.cols, t))
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.rows)
            .map(|i| {
                let (c, x) = self.row(i);
                c.iter().zip(x).map(|(&j, &a)| a * v[j]).sum()
            })
            .collect()
    }

    pub fn mul_vec_transposed(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (i, j, a) in self.iter() {
            out[j] += a * v[i];
        }
        out
    }

    /// Fraction of stored entries, in percent.
    pub fn nnz_percent(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        100.0 * self.nnz() as f64 / (self.rows as f64 * self.cols as f64)
    }
}

/// Read-only view shared by the SVD and retrieval code.
pub trait MatrixView {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    /// A·x
    fn apply(&self, x: &[f64]) -> Vec<f64>;
    /// Aᵀ·y
    fn apply_transposed(&self, y: &[f64]) -> Vec<f64>;
    /// AᵀA when `transposed` is false, AAᵀ otherwise.
    fn gram(&self, transposed: bool) -> DenseMatrix;
    fn frobenius(&self) -> f64;
    /// Euclidean norm of every column.
    fn column_norms(&self) -> Vec<f64>;
}

impl MatrixView for DenseMatrix {
    fn nrows(&self) -> usize {
        self.rows
    }

    fn ncols(&self) -> usize {
        self.cols
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    fn apply_transposed(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (i, &yi) in y.iter().enumerate() {
            if yi == 0.0 {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a * yi;
            }
        }
        out
    }

    fn gram(&self, transposed: bool) -> DenseMatrix {
        if transposed {
            let n = self.rows;
            let mut g = DenseMatrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let v = dot(self.row(i), self.row(j));
                    g.set(i, j, v);
                    g.set(j, i, v);
                }
            }
            g
        } else {
            self.transpose().gram(true)
        }
    }

    fn frobenius(&self) -> f64 {
        self.frobenius_norm()
    }

    fn column_norms(&self) -> Vec<f64> {
        let mut sq = vec![0.0; self.cols];
        for i in 0..self.rows {
            for (s, &a) in sq.iter_mut().zip(self.row(i)) {
                *s += a * a;
            }
        }
        sq.into_iter().map(f64::sqrt).collect()
    }
}

impl MatrixView for SparseMatrix {
    fn nrows(&self) -> usize {
        self.rows
    }

    fn ncols(&self) -> usize {
        self.cols
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.mul_vec(x)
    }

    fn apply_transposed(&self, y: &[f64]) -> Vec<f64> {
        self.mul_vec_transposed(y)
    }

    fn gram(&self, transposed: bool) -> DenseMatrix {
        let source = if transposed { self.transpose() } else { self.clone() };
        // Accumulate outer products of each row's nonzeros.
        let n = source.cols;
        let mut g = DenseMatrix::zeros(n, n);
        for i in 0..source.rows {
            let (c, v) = source.row(i);
            for (a, (&j, &x)) in c.iter().zip(v).enumerate() {
                for (&k, &y) in c[a..].iter().zip(&v[a..]) {
                    g.data[j * n + k] += x * y;
                }
            }
        }
        for j in 0..n {
            for k in (j + 1)..n {
                let v = g.get(j, k);
                g.set(k, j, v);
            }
        }
        g
    }

    fn frobenius(&self) -> f64 {
        self.frobenius_norm()
    }

    fn column_norms(&self) -> Vec<f64> {
        let mut sq = vec![0.0; self.cols];
        for (_, j, v) in self.iter() {
            sq[j] += v * v;
        }
        sq.into_iter().map(f64::sqrt).collect()
    }
}

/// Frobenius norm of either matrix representation.
pub fn frobenius_norm(m: &impl MatrixView) -> f64 {
    m.frobenius()
}

/// Hard cluster assignment, one label in `[0, k)` per item.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterLabels {
    labels: Vec<usize>,
    k: usize,
}

impl ClusterLabels {
    pub fn new(labels: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::OutOfRange {
                what: "cluster label",
                value: bad,
                range: format!("[0, {k})"),
            });
        }
        Ok(Self { labels, k })
    }

    /// Uses `max label + 1` as the cluster count.
    pub fn from_labels(labels: Vec<usize>) -> Self {
        let k = labels.iter().max().map_or(0, |m| m + 1);
        Self { labels, k }
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
