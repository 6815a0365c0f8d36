//! Spectral, bipartite-SVD and NMF clustering, plus external quality scores.

mod metrics;
pub mod synthetic;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use metrics::{eval_clustering, matched_accuracy, QualityScores};

use crate::corpus::column_normalize_matrix;
use crate::error::{Error, Result};
use crate::graphs::{kernel_affinity, normalize_affinity, AffinityGraph, KernelSpec};
use crate::matrix::{kmeans, nmf_factorize_with, symmetric_eigen_topk, truncated_svd, ClusterLabels, DenseMatrix, NmfOptions, SparseMatrix};

/// k-means restarts used by the spectral and bipartite methods.
pub const KMEANS_RESTARTS: usize = 10;
/// Multiplicative-update iterations per NMF clustering trial.
pub const NMF_ITERATIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Spectral,
    BipartiteSvd,
    Nmf,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Spectral => "spectral",
            Method::BipartiteSvd => "bipartite-svd",
            Method::Nmf => "nmf",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spectral" => Ok(Method::Spectral),
            "bipartite-svd" => Ok(Method::BipartiteSvd),
            "nmf" => Ok(Method::Nmf),
            other => Err(Error::InvalidParameter(format!("unknown clustering method {other:?}"))),
        }
    }
}

/// Result of one clustering call.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusteringRun {
    /// Labels of the first trial.
    pub labels: ClusterLabels,
    pub k: usize,
    pub method: Method,
    pub seed: u64,
    /// Labels of every trial; a single entry for the deterministic methods.
    pub trial_labels: Vec<ClusterLabels>,
}

impl ClusteringRun {
    fn single(labels: ClusterLabels, k: usize, method: Method, seed: u64) -> Self {
        Self {
            trial_labels: vec![labels.clone()],
            labels,
            k,
            method,
            seed,
        }
    }

    pub fn trials(&self) -> usize {
        self.trial_labels.len()
    }

    /// Scores averaged over trials.
    pub fn scores(&self, reference: &ClusterLabels) -> Result<QualityScores> {
        let each = self
            .trial_labels
            .iter()
            .map(|l| eval_clustering(l, reference))
            .collect::<Result<Vec<_>>>()?;
        Ok(QualityScores::mean(&each).expect("at least one trial"))
    }
}

fn check_k(k: usize, items: usize) -> Result<()> {
    if k == 0 || k > items {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            range: format!("[1, {items}]"),
        });
    }
    Ok(())
}

/// Scales every row to unit length; zero rows are left as they are.
fn normalize_rows(x: &DenseMatrix) -> DenseMatrix {
    let mut rows = Vec::with_capacity(x.rows());
    for i in 0..x.rows() {
        let r = x.row(i);
        let n = r.iter().map(|v| v * v).sum::<f64>().sqrt();
        rows.push(if n > 0.0 { r.iter().map(|v| v / n).collect() } else { r.to_vec() });
    }
    DenseMatrix::from_rows(&rows).expect("rows share a length")
}

/// Clusters the columns of `points`: kernel affinity, `D^{-1/2} W D^{-1/2}`,
/// leading `k` eigenvectors, unit rows, k-means.
pub fn spectral_cluster(points: &DenseMatrix, k: usize, spec: KernelSpec, seed: u64) -> Result<ClusteringRun> {
    check_k(k, points.cols())?;
    spectral_cluster_graph(&kernel_affinity(points, spec)?, k, seed)
}

/// Spectral clustering of a precomputed affinity graph under its scheme.
pub fn spectral_cluster_graph(graph: &AffinityGraph, k: usize, seed: u64) -> Result<ClusteringRun> {
    check_k(k, graph.size())?;
    let h = normalize_affinity(graph)?;
    let eig = symmetric_eigen_topk(&h, k)?;
    let x = normalize_rows(&eig.vectors);
    let labels = kmeans(&x, k, seed, KMEANS_RESTARTS)?;
    Ok(ClusteringRun::single(labels, k, Method::Spectral, seed))
}

/// Clusters the documents (columns) of `a`: `A·D^{-1/2}` with
/// `D = diag(AᵀA e)`, leading `k` right singular vectors, unit rows, k-means.
pub fn bipartite_svd_cluster(a: &SparseMatrix, k: usize, seed: u64) -> Result<ClusteringRun> {
    check_k(k, a.cols().min(a.rows()))?;
    let normalized = column_normalize_matrix(a)?;
    let svd = truncated_svd(&normalized, k)?;
    let x = normalize_rows(svd.right());
    let labels = kmeans(&x, k, seed, KMEANS_RESTARTS)?;
    Ok(ClusteringRun::single(labels, k, Method::BipartiteSvd, seed))
}

/// Row index of the largest entry in each column; lowest index on ties.
pub fn column_argmax(c: &DenseMatrix) -> Vec<usize> {
    (0..c.cols())
        .map(|j| {
            let mut best = 0;
            for r in 1..c.rows() {
                if c.get(r, j) > c.get(best, j) {
                    best = r;
                }
            }
            best
        })
        .collect()
}

/// NMF clustering with [`NMF_ITERATIONS`] updates per trial.
pub fn nmf_cluster(a: &SparseMatrix, k: usize, seed: u64, trials: usize) -> Result<ClusteringRun> {
    nmf_cluster_with(a, k, seed, trials, NMF_ITERATIONS)
}

/// Normalizes as in [`bipartite_svd_cluster`], factorizes `A ≈ BC` and puts
/// document `n` in the cluster of the largest entry of column `n` of `C`.
/// Trial `t` uses seed `seed + t`.
pub fn nmf_cluster_with(a: &SparseMatrix, k: usize, seed: u64, trials: usize, iterations: usize) -> Result<ClusteringRun> {
    check_k(k, a.cols())?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let normalized = column_normalize_matrix(a)?;
    let mut trial_labels = Vec::with_capacity(trials);
    for t in 0..trials {
        let opts = NmfOptions {
            track_objective: false,
            ..NmfOptions::new(iterations, seed.wrapping_add(t as u64))
        };
        let f = nmf_factorize_with(&normalized, k, &opts)?;
        trial_labels.push(ClusterLabels::new(column_argmax(&f.coefficients), k)?);
    }
    Ok(ClusteringRun {
        labels: trial_labels[0].clone(),
        k,
        method: Method::Nmf,
        seed,
        trial_labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn block_diagonal() -> SparseMatrix {
        let rows: [&[f64]; 4] = [
            &[2.0, 1.0, 3.0, 0.0, 0.0],
            &[1.0, 2.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0, 4.0],
            &[0.0, 0.0, 0.0, 2.0, 1.0],
        ];
        DenseMatrix::from_rows(&rows).unwrap().to_sparse()
    }

    fn same_partition(a: &[usize], b: &[usize]) -> bool {
        matched_accuracy(a, b).unwrap() == 1.0
    }

    #[test]
    fn method_names() {
        for m in [Method::Spectral, Method::BipartiteSvd, Method::Nmf] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("kmeans".parse::<Method>().is_err());
    }

    #[test]
    fn spectral_blobs() {
        let cols: Vec<[f64; 2]> = vec![
            [0.1, 0.2],
            [-0.3, 0.5],
            [0.4, -0.1],
            [0.0, 0.9],
            [-0.8, -0.2],
            [100.2, 0.1],
            [99.6, -0.4],
            [100.5, 0.3],
            [99.9, 0.8],
            [100.1, -0.7],
        ];
        let pts = DenseMatrix::from_columns(&cols).unwrap();
        let run = spectral_cluster(&pts, 2, KernelSpec::Gaussian { alpha: 1.0 }, 0).unwrap();
        assert!(same_partition(run.labels.as_slice(), &[0, 0, 0, 0, 0, 1, 1, 1, 1, 1]));
    }

    #[test]
    fn spectral_k_equals_n() {
        let pts = DenseMatrix::from_columns(&[[0.0, 0.0], [3.0, 0.0], [0.0, 3.0]]).unwrap();
        let run = spectral_cluster(&pts, 3, KernelSpec::Gaussian { alpha: 1.0 }, 1).unwrap();
        let mut l = run.labels.as_slice().to_vec();
        l.sort();
        assert_eq!(l, vec![0, 1, 2]);
    }

    #[test]
    fn isolated_point_rejected() {
        // Orthogonal points under a linear kernel have zero affinity to each
        // other; the zero vector has zero affinity to everything.
        let pts = DenseMatrix::from_columns(&[[1.0, 0.0], [0.0, 0.0]]).unwrap();
        let r = spectral_cluster(&pts, 2, KernelSpec::Polynomial { c: 0.0, d: 1 }, 0);
        assert_eq!(r.unwrap_err(), Error::ZeroDegree(vec![1]));
    }

    #[test]
    fn bipartite_reference_split() {
        let run = bipartite_svd_cluster(&fixtures::synonymy().matrix, 2, 0).unwrap();
        assert!(same_partition(run.labels.as_slice(), &[0, 0, 0, 1, 1]));
        let run = bipartite_svd_cluster(&block_diagonal(), 2, 3).unwrap();
        assert!(same_partition(run.labels.as_slice(), &[0, 0, 0, 1, 1]));
    }

    #[test]
    fn bipartite_single_document() {
        let a = SparseMatrix::from_triplets(2, 1, vec![(0, 0, 1.0), (1, 0, 2.0)]).unwrap();
        let run = bipartite_svd_cluster(&a, 1, 0).unwrap();
        assert_eq!(run.labels.as_slice(), &[0]);
        let gap = SparseMatrix::from_triplets(2, 2, vec![(0, 0, 1.0)]).unwrap();
        assert!(matches!(bipartite_svd_cluster(&gap, 1, 0), Err(Error::ZeroColumns(_))));
    }

    #[test]
    fn nmf_blocks_over_trials() {
        let run = nmf_cluster(&block_diagonal(), 2, 11, 10).unwrap();
        let good = run
            .trial_labels
            .iter()
            .filter(|l| same_partition(l.as_slice(), &[0, 0, 0, 1, 1]))
            .count();
        assert!(good >= 9, "{good} of 10");
        assert_eq!(run.trials(), 10);
        assert_eq!(nmf_cluster(&block_diagonal(), 2, 11, 10).unwrap(), run);
        let ref_labels = ClusterLabels::from_labels(vec![0, 0, 0, 1, 1]);
        assert!(run.scores(&ref_labels).unwrap().purity >= 0.9);
    }

    #[test]
    fn argmax_ties_take_lowest_row() {
        let c = DenseMatrix::from_rows(&[[0.2, 0.5, 0.1], [0.7, 0.5, 0.1]]).unwrap();
        assert_eq!(column_argmax(&c), vec![1, 0, 0]);
    }
}
