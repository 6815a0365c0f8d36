//! Seeded inputs shared by the kernel benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use svdlsi::{DenseMatrix, SparseMatrix};

/// Random symmetric n×n matrix with entries in [-1, 1).
pub fn random_symmetric(n: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let v = rng.random_range(-1.0..1.0);
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    DenseMatrix::new(n, n, data).expect("finite entries")
}

/// Random nonnegative m×n count matrix with roughly `density` of entries set.
pub fn random_counts(m: usize, n: usize, density: f64, seed: u64) -> SparseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if rng.random::<f64>() < density {
                t.push((i, j, rng.random_range(1..6) as f64));
            }
        }
    }
    SparseMatrix::from_triplets(m, n, t).expect("valid triplets")
}

/// n points in d dimensions drawn uniformly from the unit cube, one per row.
pub fn random_points(n: usize, d: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..d).map(|_| rng.random::<f64>()).collect()).collect();
    DenseMatrix::from_rows(&rows).expect("finite entries")
}
