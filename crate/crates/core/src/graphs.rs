//! Affinity matrices for unipartite, bipartite and directed graphs and their
//! weighted normalizations.
//!
//! Every clustering objective handled here reduces to maximizing
//! `tr(Zᵀ Φ^{-1/2} W Φ^{-1/2} Z)` for some affinity `W` and positive diagonal
//! weight `Φ`; this module builds `W` and applies the `Φ` scaling.
//!
//! | objective | affinity | weight |
//! |-----------|----------|--------|
//! | general association | W | Φ (caller supplied) |
//! | general cuts | Φ − L | Φ |
//! | normalized association | W | D |
//! | normalized cuts | D − L (= W) | D |
//! | ratio association | W | I |
//! | ratio cuts | I − L | I |
//!
//! with `D = diag(row sums of W)` and Laplacian `L = D − W`.

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, SparseMatrix};

/// Diagonal weighting of the vertices.
#[derive(Debug, Clone, PartialEq)]
pub enum Weighting {
    /// Φ = D, the degree matrix.
    Degree,
    /// Φ = I.
    Identity,
    /// Caller-supplied strictly positive diagonal.
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveKind {
    Association,
    Cuts,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scheme {
    pub kind: ObjectiveKind,
    pub weighting: Weighting,
}

impl Scheme {
    pub fn normalized_association() -> Self {
        Self {
            kind: ObjectiveKind::Association,
            weighting: Weighting::Degree,
        }
    }

    pub fn normalized_cuts() -> Self {
        Self {
            kind: ObjectiveKind::Cuts,
            weighting: Weighting::Degree,
        }
    }

    pub fn ratio_association() -> Self {
        Self {
            kind: ObjectiveKind::Association,
            weighting: Weighting::Identity,
        }
    }

    pub fn ratio_cuts() -> Self {
        Self {
            kind: ObjectiveKind::Cuts,
            weighting: Weighting::Identity,
        }
    }

    pub fn general_association(phi: Vec<f64>) -> Self {
        Self {
            kind: ObjectiveKind::Association,
            weighting: Weighting::Explicit(phi),
        }
    }

    pub fn general_cuts(phi: Vec<f64>) -> Self {
        Self {
            kind: ObjectiveKind::Cuts,
            weighting: Weighting::Explicit(phi),
        }
    }
}

/// Symmetric nonnegative affinity matrix tagged with its objective.
#[derive(Debug, Clone, PartialEq)]
pub struct AffinityGraph {
    weights: SparseMatrix,
    scheme: Scheme,
}

const SYMMETRY_TOL: f64 = 1e-12;

impl AffinityGraph {
    pub fn new(weights: SparseMatrix, scheme: Scheme) -> Result<Self> {
        let (r, c) = weights.shape();
        if r != c {
            return Err(Error::Shape(format!("affinity must be square, got {r}x{c}")));
        }
        weights.ensure_nonnegative()?;
        let scale = weights.iter().fold(1.0_f64, |m, t| m.max(t.2.abs()));
        for (i, j, v) in weights.iter() {
            let d = (v - weights.get(j, i)).abs();
            if d > SYMMETRY_TOL * scale {
                return Err(Error::NotSymmetric {
                    max_asymmetry: d,
                    row: i,
                    col: j,
                });
            }
        }
        if let Weighting::Explicit(phi) = &scheme.weighting {
            if phi.len() != r {
                return Err(Error::LengthMismatch {
                    left: phi.len(),
                    right: r,
                });
            }
        }
        Ok(Self { weights, scheme })
    }

    pub fn weights(&self) -> &SparseMatrix {
        &self.weights
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn with_scheme(&self, scheme: Scheme) -> Result<Self> {
        Self::new(self.weights.clone(), scheme)
    }

    pub fn size(&self) -> usize {
        self.weights.rows()
    }
}

/// Kernel used to turn data points into pairwise affinities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelSpec {
    /// `(a·b + c)^d`
    Polynomial { c: f64, d: u32 },
    /// `exp(−‖a − b‖² / 2α²)`
    Gaussian { alpha: f64 },
    /// `tanh(c(a·b) + θ)`
    Sigmoid { c: f64, theta: f64 },
}

impl KernelSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            KernelSpec::Gaussian { alpha } if !(alpha > 0.0 && alpha.is_finite()) => Err(
                Error::InvalidParameter(format!("gaussian alpha must be positive, got {alpha}")),
            ),
            KernelSpec::Polynomial { d: 0, .. } => Err(Error::InvalidParameter(
                "polynomial degree must be at least 1".into(),
            )),
            KernelSpec::Polynomial { c, .. } | KernelSpec::Sigmoid { c, .. } if !c.is_finite() => {
                Err(Error::InvalidParameter(format!("kernel constant {c} is not finite")))
            }
            KernelSpec::Sigmoid { theta, .. } if !theta.is_finite() => Err(
                Error::InvalidParameter(format!("sigmoid offset {theta} is not finite")),
            ),
            _ => Ok(()),
        }
    }

    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        let dot = || a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        match *self {
            KernelSpec::Polynomial { c, d } => (dot() + c).powi(d as i32),
            KernelSpec::Gaussian { alpha } => {
                let d2: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
                (-d2 / (2.0 * alpha * alpha)).exp()
            }
            KernelSpec::Sigmoid { c, theta } => (c * dot() + theta).tanh(),
        }
    }
}

/// Pairwise kernel affinities of the columns of `points`, tagged for
/// normalized association.
///
/// Rejects kernels that produce negative affinities on the given data.
pub fn kernel_affinity(points: &DenseMatrix, spec: KernelSpec) -> Result<AffinityGraph> {
    spec.validate()?;
    let n = points.cols();
    let columns: Vec<Vec<f64>> = (0..n).map(|j| points.column(j)).collect();
    let mut triplets = Vec::new();
    for i in 0..n {
        for j in i..n {
            let v = spec.eval(&columns[i], &columns[j]);
            if !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "kernel value between points {i} and {j} is not finite"
                )));
            }
            if v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "kernel value {v} between points {i} and {j} is negative"
                )));
            }
            if v != 0.0 {
                triplets.push((i, j, v));
                if i != j {
                    triplets.push((j, i, v));
                }
            }
        }
    }
    AffinityGraph::new(
        SparseMatrix::from_triplets(n, n, triplets)?,
        Scheme::normalized_association(),
    )
}

/// Row sums `D_ii = Σ_j W_ij`.
pub fn degree_matrix(g: &AffinityGraph) -> Vec<f64> {
    g.weights.row_sums()
}

fn check_positive(phi: &[f64], what: &str) -> Result<()> {
    let bad: Vec<usize> = phi
        .iter()
        .enumerate()
        .filter(|(_, &v)| v <= 0.0)
        .map(|(i, _)| i)
        .collect();
    if !bad.is_empty() {
        return Err(match what {
            "degree" => Error::ZeroDegree(bad),
            _ => Error::InvalidParameter(format!("{what} weights must be positive at {bad:?}")),
        });
    }
    Ok(())
}

/// `Φ^{-1/2} · affinity · Φ^{-1/2}` for the graph's scheme.
pub fn normalize_affinity(g: &AffinityGraph) -> Result<DenseMatrix> {
    let n = g.size();
    let degrees = degree_matrix(g);
    let phi = match &g.scheme.weighting {
        Weighting::Degree => degrees.clone(),
        Weighting::Identity => vec![1.0; n],
        Weighting::Explicit(p) => p.clone(),
    };
    match &g.scheme.weighting {
        Weighting::Degree => check_positive(&phi, "degree")?,
        Weighting::Identity => {}
        Weighting::Explicit(p) => check_positive(p, "explicit")?,
    }

    let mut out = g.weights.to_dense();
    if g.scheme.kind == ObjectiveKind::Cuts {
        // Φ − L = Φ − D + W only touches the diagonal.
        for i in 0..n {
            let v = out.get(i, i) + phi[i] - degrees[i];
            out.set(i, i, v);
        }
    }
    // Dividing by √(φ_i φ_j) keeps the result exactly symmetric.
    for i in 0..n {
        let pi = phi[i];
        for (j, v) in out.row_mut(i).iter_mut().enumerate() {
            if *v != 0.0 {
                *v /= (pi * phi[j]).sqrt();
            }
        }
    }
    Ok(out)
}

/// `[[0, A], [Aᵀ, 0]]` as a normalized-association graph over M+N vertices.
pub fn bipartite_embed(a: &SparseMatrix) -> Result<AffinityGraph> {
    a.ensure_nonnegative()?;
    let (m, n) = a.shape();
    let mut t = Vec::with_capacity(2 * a.nnz());
    for (i, j, v) in a.iter() {
        t.push((i, m + j, v));
        t.push((m + j, i, v));
    }
    AffinityGraph::new(
        SparseMatrix::from_triplets(m + n, m + n, t)?,
        Scheme::normalized_association(),
    )
}

/// `Φ₁^{-1/2} A Φ₂^{-1/2}` with Φ₁ = row sums and Φ₂ = column sums of A.
pub fn bipartite_normalize(a: &SparseMatrix) -> Result<DenseMatrix> {
    a.ensure_nonnegative()?;
    let rows = a.row_sums();
    let cols = a.col_sums();
    let zero_rows: Vec<usize> = positions(&rows, |v| v <= 0.0);
    if !zero_rows.is_empty() {
        return Err(Error::ZeroRows(zero_rows));
    }
    let zero_cols: Vec<usize> = positions(&cols, |v| v <= 0.0);
    if !zero_cols.is_empty() {
        return Err(Error::ZeroColumns(zero_cols));
    }
    let mut out = DenseMatrix::zeros(a.rows(), a.cols());
    for (i, j, v) in a.iter() {
        out.set(i, j, v / (rows[i] * cols[j]).sqrt());
    }
    Ok(out)
}

fn positions(v: &[f64], pred: impl Fn(f64) -> bool) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| pred(x))
        .map(|(i, _)| i)
        .collect()
}

/// In/out-degree weights of a directed graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedWeights {
    /// Φ_i, column sums (weight arriving at each vertex).
    pub in_degree: Vec<f64>,
    /// Φ_o, row sums (weight leaving each vertex).
    pub out_degree: Vec<f64>,
    /// Φ_io = √(Φ_i Φ_o).
    pub combined: Vec<f64>,
}

impl DirectedWeights {
    pub fn from_graph(b: &SparseMatrix) -> Self {
        let in_degree = b.col_sums();
        let out_degree = b.row_sums();
        let combined = in_degree
            .iter()
            .zip(&out_degree)
            .map(|(i, o)| (i * o).sqrt())
            .collect();
        Self {
            in_degree,
            out_degree,
            combined,
        }
    }
}

/// `Φ_io^{-1/2} (B + Bᵀ) Φ_io^{-1/2}`.
///
/// `Weighting::Degree` uses in/out degrees, `Identity` sets Φ_i = Φ_o = I and
/// `Explicit` takes Φ_io directly.
pub fn directed_symmetrize(b: &SparseMatrix, weighting: &Weighting) -> Result<DenseMatrix> {
    let (r, c) = b.shape();
    if r != c {
        return Err(Error::Shape(format!("directed affinity must be square, got {r}x{c}")));
    }
    b.ensure_nonnegative()?;
    let phi = match weighting {
        Weighting::Identity => vec![1.0; r],
        Weighting::Degree => {
            let w = DirectedWeights::from_graph(b);
            let bad = positions(&w.combined, |v| v <= 0.0);
            if !bad.is_empty() {
                return Err(Error::ZeroDegree(bad));
            }
            w.combined
        }
        Weighting::Explicit(phi) => {
            if phi.len() != r {
                return Err(Error::LengthMismatch {
                    left: phi.len(),
                    right: r,
                });
            }
            check_positive(phi, "explicit")?;
            phi.clone()
        }
    };
    let mut out = DenseMatrix::zeros(r, r);
    for (i, j, v) in b.iter() {
        let cur = out.get(i, j);
        out.set(i, j, cur + v);
        let cur = out.get(j, i);
        out.set(j, i, cur + v);
    }
    for i in 0..r {
        for j in i..r {
            // One value written to both (i, j) and (j, i).
            let v = out.get(i, j) / (phi[i] * phi[j]).sqrt();
            out.set(i, j, v);
            out.set(j, i, v);
        }
    }
    Ok(out)
}

/// `h + σI`: eigenvectors unchanged, eigenvalues shifted by σ.
pub fn diagonal_shift(h: &DenseMatrix, sigma: f64) -> Result<DenseMatrix> {
    h.check_symmetric(1e-10)?;
    let mut out = h.clone();
    for i in 0..h.rows() {
        let v = out.get(i, i) + sigma;
        out.set(i, i, v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::{full_svd, symmetric_eigen, symmetric_eigen_topk};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(rows).unwrap()
    }

    fn sparse(rows: &[&[f64]]) -> SparseMatrix {
        dense(rows).to_sparse()
    }

    #[test]
    fn gaussian_kernel_values() {
        let pts = DenseMatrix::from_columns(&[[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]]).unwrap();
        let g = kernel_affinity(&pts, KernelSpec::Gaussian { alpha: 0.5 }).unwrap();
        let w = g.weights().to_dense();
        assert_eq!(w.get(0, 2), 1.0);
        assert!((w.get(0, 1) - (-2.0f64).exp()).abs() < 1e-15);
        assert!((0..3).all(|i| w.get(i, i) == 1.0));
    }

    #[test]
    fn linear_polynomial_is_inner_product() {
        let pts = DenseMatrix::from_columns(&[[1.0, 2.0], [3.0, 0.5], [0.0, 4.0]]).unwrap();
        let g = kernel_affinity(&pts, KernelSpec::Polynomial { c: 0.0, d: 1 }).unwrap();
        let gram = pts.transpose().matmul(&pts).unwrap();
        assert_eq!(g.weights().to_dense(), gram);
    }

    #[test]
    fn kernel_parameter_validation() {
        let pts = DenseMatrix::identity(2);
        for bad in [
            KernelSpec::Gaussian { alpha: 0.0 },
            KernelSpec::Gaussian { alpha: -1.0 },
            KernelSpec::Polynomial { c: 1.0, d: 0 },
        ] {
            assert!(matches!(kernel_affinity(&pts, bad), Err(Error::InvalidParameter(_))));
        }
        // tanh(−5) < 0 on orthogonal points.
        assert!(kernel_affinity(&pts, KernelSpec::Sigmoid { c: 1.0, theta: -5.0 }).is_err());
    }

    #[test]
    fn degrees() {
        let g = AffinityGraph::new(SparseMatrix::from_dense(&DenseMatrix::identity(3)), Scheme::ratio_association())
            .unwrap();
        assert_eq!(degree_matrix(&g), vec![1.0; 3]);
        let g = AffinityGraph::new(sparse(&[&[0.0, 2.0], &[2.0, 0.0]]), Scheme::normalized_association()).unwrap();
        assert_eq!(degree_matrix(&g), vec![2.0, 2.0]);
    }

    #[test]
    fn bank_vertex_degree_in_bipartite_embedding() {
        let t = fixtures::polysemy();
        let g = bipartite_embed(&t.matrix).unwrap();
        // Row-sum oracle over the original table.
        let expected: f64 = (0..6).map(|j| t.matrix.get(t.word_index("bank"), j)).sum();
        assert_eq!(degree_matrix(&g)[t.word_index("bank")], expected);
        assert_eq!(expected, 6.0);
    }

    #[test]
    fn normalization_schemes() {
        let w = sparse(&[&[0.0, 2.0], &[2.0, 0.0]]);
        let g = AffinityGraph::new(w.clone(), Scheme::ratio_association()).unwrap();
        assert_eq!(normalize_affinity(&g).unwrap(), w.to_dense());
        let g = g.with_scheme(Scheme::normalized_association()).unwrap();
        assert_eq!(normalize_affinity(&g).unwrap(), dense(&[&[0.0, 1.0], &[1.0, 0.0]]));
        // Normalized cuts uses D − L = W.
        let g = g.with_scheme(Scheme::normalized_cuts()).unwrap();
        assert_eq!(normalize_affinity(&g).unwrap(), dense(&[&[0.0, 1.0], &[1.0, 0.0]]));
        // Ratio cuts: I − L = I − D + W.
        let g = g.with_scheme(Scheme::ratio_cuts()).unwrap();
        assert_eq!(normalize_affinity(&g).unwrap(), dense(&[&[-1.0, 2.0], &[2.0, -1.0]]));
        let g = g.with_scheme(Scheme::general_association(vec![4.0, 1.0])).unwrap();
        assert_eq!(normalize_affinity(&g).unwrap(), dense(&[&[0.0, 1.0], &[1.0, 0.0]]));
    }

    #[test]
    fn isolated_vertex_rejected() {
        let g = AffinityGraph::new(sparse(&[&[0.0, 1.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 0.0, 0.0]]), Scheme::normalized_association())
            .unwrap();
        assert_eq!(normalize_affinity(&g), Err(Error::ZeroDegree(vec![2])));
        let g = g.with_scheme(Scheme::ratio_association()).unwrap();
        assert!(normalize_affinity(&g).is_ok());
    }

    #[test]
    fn asymmetric_affinity_rejected() {
        assert!(matches!(
            AffinityGraph::new(sparse(&[&[0.0, 1.0], &[0.5, 0.0]]), Scheme::ratio_association()),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn normalized_spectrum_bounded_by_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let mut t = Vec::new();
            for i in 0..4 {
                for j in i..4 {
                    let v: f64 = rng.random_range(0.0..1.0);
                    t.push((i, j, v));
                    if i != j {
                        t.push((j, i, v));
                    }
                }
            }
            let g = AffinityGraph::new(SparseMatrix::from_triplets(4, 4, t).unwrap(), Scheme::normalized_association())
                .unwrap();
            let e = symmetric_eigen_topk(&normalize_affinity(&g).unwrap(), 1).unwrap();
            assert!(e.values[0] <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn normalization_keeps_off_diagonal_zero_pattern() {
        let w = sparse(&[&[1.0, 2.0, 0.0], &[2.0, 0.0, 3.0], &[0.0, 3.0, 1.0]]);
        for scheme in [
            Scheme::normalized_association(),
            Scheme::normalized_cuts(),
            Scheme::ratio_cuts(),
            Scheme::general_cuts(vec![1.0, 2.0, 3.0]),
        ] {
            let g = AffinityGraph::new(w.clone(), scheme).unwrap();
            let n = normalize_affinity(&g).unwrap();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        assert_eq!(n.get(i, j) == 0.0, w.get(i, j) == 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn bipartite_embedding_structure() {
        let g = bipartite_embed(&sparse(&[&[3.0]])).unwrap();
        assert_eq!(g.weights().to_dense(), dense(&[&[0.0, 3.0], &[3.0, 0.0]]));

        let t = fixtures::synonymy();
        let g = bipartite_embed(&t.matrix).unwrap();
        let w = g.weights().to_dense();
        assert_eq!(w.shape(), (11, 11));
        assert_eq!(w.max_asymmetry().0, 0.0);
        for i in 0..11 {
            for j in 0..11 {
                if (i < 6) == (j < 6) {
                    assert_eq!(w.get(i, j), 0.0);
                }
            }
        }
    }

    #[test]
    fn embedding_spectrum_is_plus_minus_singular_values() {
        let t = fixtures::synonymy();
        let abar = bipartite_normalize(&t.matrix).unwrap();
        let sv = full_svd(&abar);
        let emb = bipartite_embed(&abar.to_sparse()).unwrap();
        let e = symmetric_eigen(&emb.weights().to_dense()).unwrap();
        let n = e.values.len();
        for (k, s) in sv.values().iter().enumerate() {
            assert!((e.values[k] - s).abs() < 1e-10);
            assert!((e.values[n - 1 - k] + s).abs() < 1e-10);
        }
    }

    #[test]
    fn bipartite_normalization_values() {
        assert_eq!(bipartite_normalize(&sparse(&[&[4.0]])).unwrap(), dense(&[&[1.0]]));
        assert_eq!(
            bipartite_normalize(&sparse(&[&[1.0, 1.0], &[1.0, 1.0]])).unwrap(),
            dense(&[&[0.5, 0.5], &[0.5, 0.5]])
        );
        let abar = bipartite_normalize(&fixtures::synonymy().matrix).unwrap();
        assert!((full_svd(&abar).values()[0] - 1.0).abs() < 1e-8);
        assert_eq!(
            bipartite_normalize(&sparse(&[&[1.0, 0.0], &[0.0, 0.0]])),
            Err(Error::ZeroRows(vec![1]))
        );
        assert_eq!(
            bipartite_normalize(&sparse(&[&[1.0, 0.0], &[1.0, 0.0]])),
            Err(Error::ZeroColumns(vec![1]))
        );
    }

    #[test]
    fn directed_symmetrization() {
        let b = sparse(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(
            directed_symmetrize(&b, &Weighting::Identity).unwrap(),
            dense(&[&[0.0, 1.0], &[1.0, 0.0]])
        );
        let s = sparse(&[&[1.0, 2.0], &[2.0, 0.0]]);
        assert_eq!(
            directed_symmetrize(&s, &Weighting::Identity).unwrap(),
            s.to_dense().scale(2.0)
        );

        let b = sparse(&[&[0.0, 2.0], &[1.0, 0.0]]);
        let w = DirectedWeights::from_graph(&b);
        assert_eq!(w.in_degree, vec![1.0, 2.0]);
        assert_eq!(w.out_degree, vec![2.0, 1.0]);
        let out = directed_symmetrize(&b, &Weighting::Degree).unwrap();
        assert!((out.get(0, 1) - 3.0 / 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(out.max_asymmetry().0, 0.0);

        // Vertex 1 receives no edges.
        let b = sparse(&[&[1.0, 0.0], &[1.0, 0.0]]);
        assert_eq!(directed_symmetrize(&b, &Weighting::Degree), Err(Error::ZeroDegree(vec![1])));
    }

    #[test]
    fn directed_output_exactly_symmetric_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let t = (0..5)
                .flat_map(|i| (0..5).map(move |j| (i, j)))
                .map(|(i, j)| (i, j, rng.random_range(0.1..3.0)))
                .collect();
            let b = SparseMatrix::from_triplets(5, 5, t).unwrap();
            let out = directed_symmetrize(&b, &Weighting::Degree).unwrap();
            assert_eq!(out.max_asymmetry().0, 0.0);
        }
    }

    #[test]
    fn shifting_moves_spectrum() {
        let h = dense(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert_eq!(diagonal_shift(&h, 0.0).unwrap(), h);
        let e = symmetric_eigen(&diagonal_shift(&h, 1.0).unwrap()).unwrap();
        assert!((e.values[0] - 2.0).abs() < 1e-14 && e.values[1].abs() < 1e-14);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut r = DenseMatrix::zeros(6, 6);
        for i in 0..6 {
            for j in i..6 {
                let v = rng.random_range(-1.0..1.0);
                r.set(i, j, v);
                r.set(j, i, v);
            }
        }
        let lmin = *symmetric_eigen(&r).unwrap().values.last().unwrap();
        let shifted = diagonal_shift(&r, lmin.abs()).unwrap();
        assert!(*symmetric_eigen(&shifted).unwrap().values.last().unwrap() >= -1e-10);
    }
}
