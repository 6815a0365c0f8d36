//! Truncated SVD through the Jacobi eigendecomposition of the smaller Gram
//! matrix.
//!
//! For an M×N matrix with N ≤ M the right singular vectors are the
//! eigenvectors of AᵀA; singular values are recomputed as ‖A·v‖ (more
//! accurate than √λ for small values) and the left vectors follow as
//! A·v/σ. The derived side is re-orthonormalized so both factor matrices
//! are column-orthonormal to working precision even when A is rank
//! deficient. When M < N the roles are swapped.

use super::eigen::{fix_sign, jacobi};
use super::{dot, norm, DenseMatrix, MatrixView, SparseMatrix};
use crate::error::{Error, Result};

/// Truncated factors `A_K = U_K Σ_K V_Kᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SvdFactors {
    left: DenseMatrix,
    values: Vec<f64>,
    right: DenseMatrix,
}

impl SvdFactors {
    /// Validates shapes and ordering of externally supplied factors.
    pub fn new(left: DenseMatrix, values: Vec<f64>, right: DenseMatrix) -> Result<Self> {
        let k = values.len();
        if left.cols() != k || right.cols() != k {
            return Err(Error::Shape(format!(
                "left has {} columns, right has {}, but {k} singular values",
                left.cols(),
                right.cols()
            )));
        }
        if values.iter().any(|&s| s < 0.0) {
            return Err(Error::InvalidParameter(
                "singular values must be nonnegative".into(),
            ));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidParameter(
                "singular values must be non-increasing".into(),
            ));
        }
        Ok(Self {
            left,
            values,
            right,
        })
    }

    /// M×K left singular vectors.
    pub fn left(&self) -> &DenseMatrix {
        &self.left
    }

    /// N×K right singular vectors.
    pub fn right(&self) -> &DenseMatrix {
        &self.right
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// Keeps the leading `k` triplets; cheap, no refactorization.
    pub fn truncate(&self, k: usize) -> Result<SvdFactors> {
        if k == 0 || k > self.rank() {
            return Err(Error::OutOfRange {
                what: "rank",
                value: k,
                range: format!("[1, {}]", self.rank()),
            });
        }
        Ok(Self {
            left: self.left.leading_columns(k),
            values: self.values[..k].to_vec(),
            right: self.right.leading_columns(k),
        })
    }

    /// U_K Σ_K V_Kᵀ
    pub fn reconstruct(&self) -> DenseMatrix {
        let m = self.left.rows();
        let n = self.right.rows();
        let k = self.rank();
        // Scale U by Σ once, then multiply by Vᵀ row by row.
        let mut us = self.left.clone();
        for i in 0..m {
            for (c, s) in us.row_mut(i).iter_mut().zip(&self.values) {
                *c *= s;
            }
        }
        let mut out = DenseMatrix::zeros(m, n);
        for i in 0..m {
            let ui = us.row(i);
            let row = out.row_mut(i);
            for (j, o) in row.iter_mut().enumerate() {
                *o = dot(ui, &self.right.row(j)[..k]);
            }
        }
        out
    }
}

/// Matrix product of the factors; see [`SvdFactors::reconstruct`].
pub fn rank_k_reconstruct(f: &SvdFactors) -> Result<DenseMatrix> {
    if f.left.cols() != f.rank() || f.right.cols() != f.rank() {
        return Err(Error::Shape("inconsistent factor shapes".into()));
    }
    Ok(f.reconstruct())
}

/// All min(M, N) singular triplets.
pub fn full_svd(a: &impl MatrixView) -> SvdFactors {
    let (m, n) = (a.nrows(), a.ncols());
    let transposed = m < n;
    let pairs = jacobi(&a.gram(transposed));

    // `base` vectors come from the eigensolver; `derived` = A·base/σ.
    let mut sigma_base: Vec<(f64, Vec<f64>, Vec<f64>)> = pairs
        .into_iter()
        .map(|(_, v)| {
            let w = if transposed {
                a.apply_transposed(&v)
            } else {
                a.apply(&v)
            };
            (norm(&w), v, w)
        })
        .collect();
    // Stable: keeps the eigensolver order when σ values coincide.
    sigma_base.sort_by(|x, y| y.0.total_cmp(&x.0));

    let derived_dim = if transposed { n } else { m };
    let sigma_max = sigma_base.first().map_or(0.0, |p| p.0);
    let negligible = sigma_max * f64::EPSILON * (m.max(n) as f64);

    let mut values = Vec::with_capacity(sigma_base.len());
    let mut base_vecs = Vec::with_capacity(sigma_base.len());
    let mut derived = Vec::with_capacity(sigma_base.len());
    for (sigma, v, w) in sigma_base {
        let d = if sigma > negligible {
            w.into_iter().map(|x| x / sigma).collect()
        } else {
            vec![0.0; derived_dim]
        };
        values.push(if sigma > negligible { sigma } else { 0.0 });
        base_vecs.push(v);
        derived.push(d);
    }
    orthonormalize(&mut derived);

    // Sign convention on the right singular vector; the pair flips together.
    let (mut lefts, mut rights) = if transposed {
        (base_vecs, derived)
    } else {
        (derived, base_vecs)
    };
    for (u, v) in lefts.iter_mut().zip(rights.iter_mut()) {
        let before = v.clone();
        fix_sign(v);
        if before != *v {
            u.iter_mut().for_each(|x| *x = -*x);
        }
    }

    SvdFactors {
        left: DenseMatrix::from_columns(&lefts).expect("finite singular vectors"),
        values,
        right: DenseMatrix::from_columns(&rights).expect("finite singular vectors"),
    }
}

/// Leading `k` singular triplets of a sparse matrix.
pub fn truncated_svd(a: &SparseMatrix, k: usize) -> Result<SvdFactors> {
    check_rank(a, k)?;
    full_svd(a).truncate(k)
}

/// Leading `k` singular triplets of a dense matrix.
pub fn truncated_svd_dense(a: &DenseMatrix, k: usize) -> Result<SvdFactors> {
    check_rank(a, k)?;
    full_svd(a).truncate(k)
}

fn check_rank(a: &impl MatrixView, k: usize) -> Result<()> {
    let max = a.nrows().min(a.ncols());
    if k == 0 || k > max {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            range: format!("[1, {max}]"),
        });
    }
    Ok(())
}

/// Two passes of modified Gram–Schmidt; vectors that vanish (null-space
/// directions) are replaced by the first unit axis that completes the basis.
fn orthonormalize(vectors: &mut [Vec<f64>]) {
    let dim = vectors.first().map_or(0, |v| v.len());
    for idx in 0..vectors.len() {
        let (done, rest) = vectors.split_at_mut(idx);
        let v = &mut rest[0];
        let original = norm(v);
        for _ in 0..2 {
            for q in done.iter() {
                let p = dot(q, v);
                v.iter_mut().zip(q).for_each(|(x, y)| *x -= p * y);
            }
        }
        let nv = norm(v);
        if original > 0.0 && nv > 1e-8 * original {
            v.iter_mut().for_each(|x| *x /= nv);
            continue;
        }
        // Complete with a unit axis orthogonal to everything so far.
        for axis in 0..dim {
            let mut e = vec![0.0; dim];
            e[axis] = 1.0;
            for _ in 0..2 {
                for q in done.iter() {
                    let p = dot(q, &e);
                    e.iter_mut().zip(q).for_each(|(x, y)| *x -= p * y);
                }
            }
            let ne = norm(&e);
            if ne > 1e-6 {
                e.iter_mut().for_each(|x| *x /= ne);
                *v = e;
                break;
            }
        }
    }
}
