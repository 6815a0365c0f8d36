//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::io::Write;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use svdlsi::{DenseMatrix, SparseMatrix};

pub fn to_na(m: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

pub fn from_na(m: &DMatrix<f64>) -> DenseMatrix {
    let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
    DenseMatrix::from_rows(&rows).unwrap()
}

pub fn random_dense(rng: &mut ChaCha8Rng, m: usize, n: usize) -> DenseMatrix {
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..n).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    DenseMatrix::from_rows(&rows).unwrap()
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> DenseMatrix {
    let a = random_dense(rng, n, n);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i <= j { a.get(i, j) } else { a.get(j, i) }).collect())
        .collect();
    DenseMatrix::from_rows(&rows).unwrap()
}

/// Nonnegative counts with about `density` of the entries set.
pub fn random_counts(rng: &mut ChaCha8Rng, m: usize, n: usize, density: f64) -> SparseMatrix {
    let mut t = Vec::new();
    for i in 0..m {
        for j in 0..n {
            if rng.random::<f64>() < density {
                t.push((i, j, rng.random_range(1..6) as f64));
            }
        }
    }
    SparseMatrix::from_triplets(m, n, t).unwrap()
}

/// Q factor of a random M×K matrix (column-orthonormal).
pub fn random_orthonormal(rng: &mut ChaCha8Rng, m: usize, k: usize) -> DMatrix<f64> {
    let a = to_na(&random_dense(rng, m, k));
    a.qr().q().columns(0, k).into_owned()
}

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Collects named checks for one criterion and prints a single verdict line.
pub struct Verdict {
    id: &'static str,
    title: &'static str,
    checks: Vec<(String, bool)>,
    notes: Vec<String>,
}

impl Verdict {
    pub fn new(id: &'static str, title: &'static str) -> Self {
        Self {
            id,
            title,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.push((name.into(), ok));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Prints the verdict straight to the process stderr, so it shows even
    /// when the test harness captures output, then fails on any miss.
    pub fn finish(self) {
        let failed: Vec<&str> = self.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
        let status = if failed.is_empty() && !self.checks.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "ACCEPTANCE criterion {} {}: {} ({}/{} checks)",
            self.id,
            status,
            self.title,
            self.checks.len() - failed.len(),
            self.checks.len()
        );
        if !self.notes.is_empty() {
            line.push_str(&format!(" [{}]", self.notes.join("; ")));
        }
        if !failed.is_empty() {
            line.push_str(&format!(" failed: {}", failed.join(", ")));
        }
        let _ = writeln!(std::io::stderr(), "{line}");
        assert!(status == "PASS", "{line}");
    }
}
