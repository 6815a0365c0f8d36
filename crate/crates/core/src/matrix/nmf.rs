//! Lee–Seung multiplicative updates for the Frobenius objective.
//!
//! `C ← C ∘ (BᵀA) / (BᵀBC + ε)` followed by `B ← B ∘ (ACᵀ) / (BCCᵀ + ε)`.
//! Factors start from seeded uniform values in (0, 1].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DenseMatrix, SparseMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NmfOptions {
    pub iterations: usize,
    pub seed: u64,
    /// Denominator guard.
    pub epsilon: f64,
    /// Record ‖A − BC‖_F after every iteration (costs one M×N×K product each).
    pub track_objective: bool,
}

impl NmfOptions {
    pub fn new(iterations: usize, seed: u64) -> Self {
        Self {
            iterations,
            seed,
            epsilon: 1e-9,
            track_objective: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NmfFactors {
    /// M×K basis.
    pub basis: DenseMatrix,
    /// K×N coefficients.
    pub coefficients: DenseMatrix,
    /// ‖A − BC‖_F at initialization and after each iteration (when tracked).
    pub objective: Vec<f64>,
}

impl NmfFactors {
    pub fn reconstruct(&self) -> DenseMatrix {
        self.basis
            .matmul(&self.coefficients)
            .expect("factor shapes agree by construction")
    }
}

pub fn nmf_factorize(a: &SparseMatrix, k: usize, iterations: usize, seed: u64) -> Result<NmfFactors> {
    nmf_factorize_with(a, k, &NmfOptions::new(iterations, seed))
}

pub fn nmf_factorize_with(a: &SparseMatrix, k: usize, opts: &NmfOptions) -> Result<NmfFactors> {
    a.ensure_nonnegative()?;
    if k == 0 {
        return Err(Error::InvalidParameter("NMF rank must be at least 1".into()));
    }
    if opts.iterations == 0 {
        return Err(Error::InvalidParameter(
            "NMF needs at least one iteration".into(),
        ));
    }
    let (m, n) = a.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut unit = || 1.0 - rng.random::<f64>();
    let mut b = DenseMatrix::new(m, k, (0..m * k).map(|_| unit()).collect())?;
    let mut c = DenseMatrix::new(k, n, (0..k * n).map(|_| unit()).collect())?;
    let eps = opts.epsilon;

    let mut objective = Vec::new();
    if opts.track_objective {
        objective.push(residual(a, &b, &c));
    }
    let at = a.transpose();

    for _ in 0..opts.iterations {
        // C update
        let bta = sparse_left_product(&b, a, k); // K×N = Bᵀ A
        let btb = b.transpose().matmul(&b)?; // K×K
        let btbc = btb.matmul(&c)?;
        for idx in 0..k * n {
            c.data[idx] *= bta.data[idx] / (btbc.data[idx] + eps);
        }
        // B update
        let act = sparse_left_product(&c.transpose(), &at, k).transpose(); // M×K = A Cᵀ
        let cct = c.matmul(&c.transpose())?; // K×K
        let bcct = b.matmul(&cct)?;
        for idx in 0..m * k {
            b.data[idx] *= act.data[idx] / (bcct.data[idx] + eps);
        }
        if opts.track_objective {
            objective.push(residual(a, &b, &c));
        }
    }

    Ok(NmfFactors {
        basis: b,
        coefficients: c,
        objective,
    })
}

/// Xᵀ·S for dense X (rows match S's rows) and sparse S; returns K×cols(S).
fn sparse_left_product(x: &DenseMatrix, s: &SparseMatrix, k: usize) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(k, s.cols());
    for (i, j, v) in s.iter() {
        for (r, &xv) in x.row(i).iter().enumerate() {
            out.data[r * s.cols() + j] += xv * v;
        }
    }
    out
}

fn residual(a: &SparseMatrix, b: &DenseMatrix, c: &DenseMatrix) -> f64 {
    let mut bc = b.matmul(c).expect("factor shapes agree by construction");
    for (i, j, v) in a.iter() {
        let cur = bc.get(i, j);
        bc.set(i, j, cur - v);
    }
    bc.frobenius_norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_one() -> SparseMatrix {
        // outer([1, 2], [3, 4])
        SparseMatrix::from_dense(&DenseMatrix::from_rows(&[[3.0, 4.0], [6.0, 8.0]]).unwrap())
    }

    #[test]
    fn recovers_rank_one_outer_product() {
        let f = nmf_factorize(&rank_one(), 1, 200, 7).unwrap();
        assert!(*f.objective.last().unwrap() < 1e-4);
    }

    #[test]
    fn factors_nonnegative_and_objective_monotone() {
        let a = crate::fixtures::synonymy().matrix;
        for seed in 0..5 {
            let f = nmf_factorize(&a, 2, 100, seed).unwrap();
            assert!(f.basis.as_slice().iter().all(|&v| v >= 0.0));
            assert!(f.coefficients.as_slice().iter().all(|&v| v >= 0.0));
            for w in f.objective.windows(2) {
                assert!(w[1] <= w[0] + 1e-10, "{} -> {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let a = crate::fixtures::polysemy().matrix;
        let x = nmf_factorize(&a, 2, 50, 42).unwrap();
        let y = nmf_factorize(&a, 2, 50, 42).unwrap();
        assert_eq!(x, y);
        let z = nmf_factorize(&a, 2, 50, 43).unwrap();
        assert_ne!(x.basis, z.basis);
    }

    #[test]
    fn rejects_negative_input() {
        let a = SparseMatrix::from_triplets(1, 2, vec![(0, 0, -1.0)]).unwrap();
        assert!(matches!(
            nmf_factorize(&a, 1, 10, 0),
            Err(Error::Negative { .. })
        ));
        assert!(nmf_factorize(&rank_one(), 0, 10, 0).is_err());
        assert!(nmf_factorize(&rank_one(), 1, 0, 0).is_err());
    }
}
