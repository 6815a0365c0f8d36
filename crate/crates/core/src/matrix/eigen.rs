//! Symmetric eigendecomposition by cyclic Jacobi rotations.
//!
//! One kernel serves both the spectral-clustering path and the SVD path
//! (which diagonalizes the smaller Gram matrix). Output ordering and signs
//! are fully deterministic:
//!
//! * eigenvalues are sorted non-increasing; exactly equal values keep the
//!   order of their diagonal position after the sweeps,
//! * each eigenvector is flipped so that its largest-magnitude component is
//!   positive (first such component on magnitude ties).

use super::DenseMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-10;

/// Leading eigenpairs of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPairs {
    /// Eigenvalues, non-increasing.
    pub values: Vec<f64>,
    /// N×K, column k pairs with `values[k]`.
    pub vectors: DenseMatrix,
}

impl EigenPairs {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn vector(&self, k: usize) -> Vec<f64> {
        self.vectors.column(k)
    }
}

/// The `k` algebraically largest eigenpairs of `h`.
pub fn symmetric_eigen_topk(h: &DenseMatrix, k: usize) -> Result<EigenPairs> {
    h.check_symmetric(SYMMETRY_TOL)?;
    let n = h.rows();
    if k == 0 || k > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            range: format!("[1, {n}]"),
        });
    }
    let mut full = jacobi(h);
    full.truncate(k);
    Ok(pack(n, full))
}

/// Full eigendecomposition, values non-increasing.
pub fn symmetric_eigen(h: &DenseMatrix) -> Result<EigenPairs> {
    h.check_symmetric(SYMMETRY_TOL)?;
    let n = h.rows();
    Ok(pack(n, jacobi(h)))
}

fn pack(n: usize, pairs: Vec<(f64, Vec<f64>)>) -> EigenPairs {
    let k = pairs.len();
    let mut vectors = DenseMatrix::zeros(n, k);
    let mut values = Vec::with_capacity(k);
    for (c, (value, vec)) in pairs.into_iter().enumerate() {
        values.push(value);
        for (i, x) in vec.into_iter().enumerate() {
            vectors.set(i, c, x);
        }
    }
    EigenPairs { values, vectors }
}

/// Runs cyclic Jacobi on a copy of `h` (assumed symmetric) and returns all
/// eigenpairs sorted and sign-normalized.
pub(crate) fn jacobi(h: &DenseMatrix) -> Vec<(f64, Vec<f64>)> {
    let n = h.rows();
    // Work on the symmetrized copy so tiny input asymmetry cannot bias rotations.
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (h.get(i, j) + h.get(j, i));
        }
    }
    // Row p of `vt` is the current estimate of eigenvector p.
    let mut vt = vec![0.0; n * n];
    for i in 0..n {
        vt[i * n + i] = 1.0;
    }

    let scale = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    if scale > 0.0 {
        for sweep in 0..MAX_SWEEPS {
            let off = off_diagonal_norm(&a, n);
            if off == 0.0 || off <= f64::EPSILON * 1e-3 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p * n + q];
                    if apq == 0.0 {
                        continue;
                    }
                    let app = a[p * n + p];
                    let aqq = a[q * n + q];
                    let g = 100.0 * apq.abs();
                    // Once the element is negligible against both diagonals it is dropped.
                    if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                        a[p * n + q] = 0.0;
                        a[q * n + p] = 0.0;
                        continue;
                    }
                    rotate(&mut a, &mut vt, n, p, q);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // Stable sort: equal eigenvalues stay in ascending diagonal index.
    order.sort_by(|&x, &y| a[y * n + y].total_cmp(&a[x * n + x]));
    order
        .into_iter()
        .map(|p| {
            let mut v = vt[p * n..(p + 1) * n].to_vec();
            fix_sign(&mut v);
            (a[p * n + p], v)
        })
        .collect()
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Zeroes a[p][q] with one two-sided rotation; `vt` accumulates it.
fn rotate(a: &mut [f64], vt: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.is_infinite() {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[p * n + k];
        let akq = a[q * n + k];
        let new_p = c * akp - s * akq;
        let new_q = s * akp + c * akq;
        a[p * n + k] = new_p;
        a[k * n + p] = new_p;
        a[q * n + k] = new_q;
        a[k * n + q] = new_q;
    }
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;

    let (head, tail) = vt.split_at_mut(q * n);
    let row_p = &mut head[p * n..(p + 1) * n];
    let row_q = &mut tail[..n];
    for (vp, vq) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let x = *vp;
        let y = *vq;
        *vp = c * x - s * y;
        *vq = s * x + c * y;
    }
}

/// Makes the largest-magnitude component positive (lowest index on ties).
pub(crate) fn fix_sign(v: &mut [f64]) {
    let mut best = 0usize;
    let mut best_abs = -1.0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > best_abs {
            best_abs = x.abs();
            best = i;
        }
    }
    if !v.is_empty() && v[best] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}
