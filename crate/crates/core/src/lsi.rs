//! Similarity-driven completion of a word-by-document matrix.
//!
//! Each word row is compared with every other by cosine similarity, then the
//! matrix is repeatedly updated with `a_ij ← max(a_ij, s_ik·a_kj)` over all
//! `k ≠ i` until it stops changing. Weight flows along chains of similar
//! words, so after `n` iterations an entry carries the best product
//! `s_{i i2}·s_{i2 i3}⋯a_{in j}` over walks of length at most `n`.
//!
//! Each iteration reads only the previous matrix (snapshot order), which
//! makes the iterate sequence a fixed function of the input and the result
//! independent of evaluation order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, SparseMatrix};

/// Pairs at or above this cosine count as perfectly similar.
pub const PERFECT_SIMILARITY: f64 = 1.0 - 1e-12;

/// Symmetric word-pair cosine similarities with the diagonal left out.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    entries: SparseMatrix,
    zero_rows: Vec<usize>,
}

impl SimilarityMatrix {
    /// Wraps explicit similarities. Entries must be symmetric, in `[0, 1]`,
    /// and off the diagonal.
    pub fn from_sparse(entries: SparseMatrix) -> Result<Self> {
        let (m, n) = entries.shape();
        if m != n {
            return Err(Error::Shape(format!("similarity must be square, got {m}x{n}")));
        }
        for (i, j, v) in entries.iter() {
            if i == j {
                return Err(Error::InvalidParameter(format!(
                    "similarity diagonal entry ({i}, {i}) must not be stored"
                )));
            }
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!(
                    "similarity ({i}, {j}) = {v} outside [0, 1]"
                )));
            }
            let t = entries.get(j, i);
            if t != v {
                return Err(Error::NotSymmetric {
                    max_asymmetry: (t - v).abs(),
                    row: i,
                    col: j,
                });
            }
        }
        Ok(Self {
            entries,
            zero_rows: Vec::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.rows()
    }

    pub fn get(&self, p: usize, q: usize) -> f64 {
        self.entries.get(p, q)
    }

    /// Neighbours of `p` with nonzero similarity, ascending.
    pub fn neighbours(&self, p: usize) -> (&[usize], &[f64]) {
        self.entries.row(p)
    }

    pub fn as_sparse(&self) -> &SparseMatrix {
        &self.entries
    }

    /// Number of stored (ordered) pairs.
    pub fn nnz(&self) -> usize {
        self.entries.nnz()
    }

    /// Rows of the source matrix that were entirely zero.
    pub fn zero_rows(&self) -> &[usize] {
        &self.zero_rows
    }

    /// Human-readable notes about degenerate input.
    pub fn warnings(&self) -> Vec<String> {
        self.zero_rows
            .iter()
            .map(|r| format!("row {r} is all zeros; its similarities are set to 0"))
            .collect()
    }
}

/// Cosine similarity between every pair of rows of `a`.
///
/// Pairs without a shared nonzero column are left unstored. Values are
/// clamped to 1 so that rounding on identical rows cannot exceed it.
pub fn word_similarity(a: &SparseMatrix) -> Result<SimilarityMatrix> {
    a.ensure_nonnegative()?;
    let m = a.rows();
    // Squared norms summed in the same order as the dot products, so that
    // identical rows give exactly dot / √(dot·dot) = 1.
    let sq: Vec<f64> = (0..m).map(|i| a.row(i).1.iter().map(|v| v * v).sum()).collect();
    let zero_rows: Vec<usize> = (0..m).filter(|&i| sq[i] == 0.0).collect();
    for &r in &zero_rows {
        log::warn!("row {r} is all zeros; similarity row set to 0");
    }
    let at = a.transpose();

    let mut acc = vec![0.0; m];
    let mut touched: Vec<usize> = Vec::new();
    let mut triplets = Vec::new();
    for p in 0..m {
        let (cols, vals) = a.row(p);
        for (&j, &x) in cols.iter().zip(vals) {
            let (rows, ys) = at.row(j);
            // Rows in a column are ascending; only later rows are needed.
            let start = rows.partition_point(|&q| q <= p);
            for (&q, &y) in rows[start..].iter().zip(&ys[start..]) {
                if acc[q] == 0.0 {
                    touched.push(q);
                }
                acc[q] += x * y;
            }
        }
        touched.sort_unstable();
        for &q in &touched {
            let s = (acc[q] / (sq[p] * sq[q]).sqrt()).min(1.0);
            acc[q] = 0.0;
            if s > 0.0 {
                triplets.push((p, q, s));
                triplets.push((q, p, s));
            }
        }
        touched.clear();
    }
    Ok(SimilarityMatrix {
        entries: SparseMatrix::from_triplets(m, m, triplets)?,
        zero_rows,
    })
}

/// One snapshot update: `out_ij = max(a_ij, max_{k≠i} s_ik·a_kj)`.
pub fn completion_step(current: &DenseMatrix, s: &SimilarityMatrix) -> Result<DenseMatrix> {
    if s.dim() != current.rows() {
        return Err(Error::Shape(format!(
            "similarity is {0}x{0} but matrix has {1} rows",
            s.dim(),
            current.rows()
        )));
    }
    let mut out = current.clone();
    for i in 0..current.rows() {
        let (ks, ss) = s.neighbours(i);
        let row = out.row_mut(i);
        for (&k, &sik) in ks.iter().zip(ss) {
            for (o, &akj) in row.iter_mut().zip(current.row(k)) {
                let v = sik * akj;
                if v > *o {
                    *o = v;
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionOptions {
    pub maxiter: usize,
    /// Consecutive unchanged iterations required to declare convergence.
    pub stable_window: usize,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        Self {
            maxiter: 100,
            stable_window: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompletionTrace {
    /// Frobenius norm of the initial matrix followed by one per iteration.
    pub norms: Vec<f64>,
    /// First iteration of the final unchanged run, or `maxiter` when the run
    /// did not converge.
    pub conviter: usize,
    pub converged: bool,
    pub ps_percent: f64,
    /// Iterations actually executed.
    pub iterations: usize,
}

/// Runs the completion to its fixpoint.
pub fn complete(initial: &SparseMatrix, maxiter: usize, stable_window: usize) -> Result<(DenseMatrix, CompletionTrace)> {
    let s = word_similarity(initial)?;
    complete_with(
        initial,
        &s,
        CompletionOptions {
            maxiter,
            stable_window,
        },
    )
}

/// Same as [`complete`] with a precomputed similarity matrix.
pub fn complete_with(
    initial: &SparseMatrix,
    s: &SimilarityMatrix,
    opts: CompletionOptions,
) -> Result<(DenseMatrix, CompletionTrace)> {
    initial.ensure_nonnegative()?;
    if opts.maxiter == 0 {
        return Err(Error::InvalidParameter("maxiter must be at least 1".into()));
    }
    if opts.stable_window == 0 {
        return Err(Error::InvalidParameter("stable window must be at least 1".into()));
    }
    let mut current = initial.to_dense();
    let mut norms = vec![current.frobenius_norm()];
    let mut run = 0;
    let mut run_start = 0;
    let mut converged = false;
    let mut iterations = 0;

    for n in 1..=opts.maxiter {
        let next = completion_step(&current, s)?;
        iterations = n;
        norms.push(next.frobenius_norm());
        // Compare entries, not norms: a norm can stay put while entries move.
        if next.as_slice() == current.as_slice() {
            if run == 0 {
                run_start = n;
            }
            run += 1;
        } else {
            run = 0;
        }
        current = next;
        if run >= opts.stable_window {
            converged = true;
            break;
        }
    }
    let conviter = if converged { run_start } else { opts.maxiter };
    if !converged {
        log::warn!("completion did not settle within {} iterations", opts.maxiter);
    }
    Ok((
        current,
        CompletionTrace {
            norms,
            conviter,
            converged,
            ps_percent: perfect_pair_percentage(s),
            iterations,
        },
    ))
}

/// Percentage of unordered word pairs with cosine ≥ [`PERFECT_SIMILARITY`].
pub fn perfect_pair_percentage(s: &SimilarityMatrix) -> f64 {
    let m = s.dim();
    if m < 2 {
        return 0.0;
    }
    let perfect = s
        .as_sparse()
        .iter()
        .filter(|&(p, q, v)| p < q && v >= PERFECT_SIMILARITY)
        .count();
    100.0 * perfect as f64 / (m as f64 * (m as f64 - 1.0) / 2.0)
}
