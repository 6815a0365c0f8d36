//! Lloyd's k-means with k-means++ seeding and seeded restarts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ClusterLabels, DenseMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansOptions {
    pub restarts: usize,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for KMeansOptions {
    fn default() -> Self {
        Self {
            restarts: 10,
            max_iterations: 300,
            seed: 0,
        }
    }
}

/// Best restart of a k-means run.
#[derive(Debug, Clone, PartialEq)]
pub struct KMeansFit {
    pub labels: ClusterLabels,
    /// K×D centroids.
    pub centroids: DenseMatrix,
    /// Within-cluster sum of squared distances.
    pub inertia: f64,
    /// Inertia after each assignment step of the winning restart.
    pub inertia_trace: Vec<f64>,
    /// Index of the winning restart.
    pub restart: usize,
}

/// Clusters the rows of `points`; returns the labels of the restart with the
/// lowest inertia (earliest restart on ties).
pub fn kmeans(points: &DenseMatrix, k: usize, seed: u64, restarts: usize) -> Result<ClusterLabels> {
    let opts = KMeansOptions {
        restarts,
        seed,
        ..KMeansOptions::default()
    };
    Ok(kmeans_fit(points, k, &opts)?.labels)
}

pub fn kmeans_fit(points: &DenseMatrix, k: usize, opts: &KMeansOptions) -> Result<KMeansFit> {
    let n = points.rows();
    if k == 0 || k > n {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            range: format!("[1, {n}]"),
        });
    }
    if opts.restarts == 0 {
        return Err(Error::InvalidParameter("restarts must be at least 1".into()));
    }
    let mut best: Option<KMeansFit> = None;
    for r in 0..opts.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(r as u64);
        let fit = lloyd(points, k, opts.max_iterations, &mut rng, r);
        if best.as_ref().is_none_or(|b| fit.inertia < b.inertia) {
            best = Some(fit);
        }
    }
    Ok(best.expect("at least one restart"))
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn plus_plus(points: &DenseMatrix, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = points.rows();
    let mut chosen = vec![false; n];
    let first = rng.random_range(0..n);
    chosen[first] = true;
    let mut centroids = vec![points.row(first).to_vec()];
    let mut d2: Vec<f64> = (0..n).map(|i| sq_dist(points.row(i), &centroids[0])).collect();

    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let target = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut pick = None;
            for (i, &w) in d2.iter().enumerate() {
                acc += w;
                if w > 0.0 && acc > target {
                    pick = Some(i);
                    break;
                }
            }
            // Rounding can leave target just above the final sum.
            pick.unwrap_or_else(|| d2.iter().rposition(|&w| w > 0.0).expect("positive total"))
        } else {
            // Every point coincides with a centroid: draw among unused points.
            let free: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
            free[rng.random_range(0..free.len())]
        };
        chosen[pick] = true;
        let c = points.row(pick).to_vec();
        for (i, d) in d2.iter_mut().enumerate() {
            *d = d.min(sq_dist(points.row(i), &c));
        }
        centroids.push(c);
    }
    centroids
}

fn nearest(x: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, centroid) in centroids.iter().enumerate() {
        let d = sq_dist(x, centroid);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn lloyd(points: &DenseMatrix, k: usize, max_iter: usize, rng: &mut ChaCha8Rng, restart: usize) -> KMeansFit {
    let n = points.rows();
    let dim = points.cols();
    let mut centroids = plus_plus(points, k, rng);
    let mut labels = vec![usize::MAX; n];
    let mut dists = vec![0.0; n];
    let mut trace = Vec::new();

    for _ in 0..max_iter {
        let mut changed = false;
        for i in 0..n {
            let (c, d) = nearest(points.row(i), &centroids);
            if labels[i] != c {
                labels[i] = c;
                changed = true;
            }
            dists[i] = d;
        }
        trace.push(dists.iter().sum());
        if !changed {
            break;
        }

        // Repair empty clusters with the point farthest from its centroid,
        // taken from a cluster that keeps at least one other member.
        let mut sizes = vec![0usize; k];
        labels.iter().for_each(|&l| sizes[l] += 1);
        for empty in 0..k {
            if sizes[empty] > 0 {
                continue;
            }
            let donor = (0..n)
                .filter(|&i| sizes[labels[i]] > 1)
                .max_by(|&a, &b| dists[a].total_cmp(&dists[b]).then(b.cmp(&a)));
            if let Some(i) = donor {
                sizes[labels[i]] -= 1;
                sizes[empty] += 1;
                labels[i] = empty;
                dists[i] = 0.0;
                centroids[empty] = points.row(i).to_vec();
            }
        }

        let mut sums = vec![vec![0.0; dim]; k];
        for i in 0..n {
            sums[labels[i]]
                .iter_mut()
                .zip(points.row(i))
                .for_each(|(s, x)| *s += x);
        }
        for c in 0..k {
            if sizes[c] > 0 {
                centroids[c] = sums[c].iter().map(|s| s / sizes[c] as f64).collect();
            }
        }
    }

    let inertia = (0..n)
        .map(|i| sq_dist(points.row(i), &centroids[labels[i]]))
        .sum();
    let flat: Vec<f64> = centroids.into_iter().flatten().collect();
    KMeansFit {
        labels: ClusterLabels::new(labels, k).expect("labels below k"),
        centroids: DenseMatrix::new(k, dim, flat).expect("finite centroids"),
        inertia,
        inertia_trace: trace,
        restart,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_distr::{Distribution, Normal};

    fn blobs(per: usize, seed: u64) -> (DenseMatrix, Vec<usize>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let normal = Normal::new(0.0, 1.0).unwrap();
        let mut rows = Vec::new();
        let mut truth = Vec::new();
        for (label, cx) in [(0usize, 0.0), (1, 100.0)] {
            for _ in 0..per {
                rows.push(vec![cx + normal.sample(&mut rng), normal.sample(&mut rng)]);
                truth.push(label);
            }
        }
        (DenseMatrix::from_rows(&rows).unwrap(), truth)
    }

    /// Exhaustive oracle: the 2-partition with minimum inertia.
    fn best_partition(points: &DenseMatrix) -> (Vec<usize>, f64) {
        let n = points.rows();
        let mut best = (vec![], f64::INFINITY);
        for mask in 1u32..(1 << n) - 1 {
            let labels: Vec<usize> = (0..n).map(|i| ((mask >> i) & 1) as usize).collect();
            let mut inertia = 0.0;
            for c in 0..2 {
                let members: Vec<usize> = (0..n).filter(|&i| labels[i] == c).collect();
                let mean: Vec<f64> = (0..points.cols())
                    .map(|d| members.iter().map(|&i| points.get(i, d)).sum::<f64>() / members.len() as f64)
                    .collect();
                inertia += members.iter().map(|&i| sq_dist(points.row(i), &mean)).sum::<f64>();
            }
            if inertia < best.1 {
                best = (labels, inertia);
            }
        }
        best
    }

    fn same_partition(a: &[usize], b: &[usize]) -> bool {
        a.iter().zip(b).all(|(x, y)| (x == &a[0]) == (y == &b[0]))
    }

    #[test]
    fn separated_blobs_match_exhaustive_oracle() {
        let (points, truth) = blobs(5, 1);
        let (oracle, _) = best_partition(&points);
        assert!(same_partition(&oracle, &truth));
        let labels = kmeans(&points, 2, 9, 10).unwrap();
        assert!(same_partition(labels.as_slice(), &truth));
    }

    #[test]
    fn k_equals_n_isolates_every_point() {
        let (points, _) = blobs(4, 2);
        let fit = kmeans_fit(&points, 8, &KMeansOptions::default()).unwrap();
        assert_eq!(fit.inertia, 0.0);
        let mut seen = fit.labels.as_slice().to_vec();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn identical_points_have_zero_inertia() {
        let points = DenseMatrix::from_rows(&[[1.5, -2.0]; 6]).unwrap();
        let fit = kmeans_fit(&points, 2, &KMeansOptions::default()).unwrap();
        assert_eq!(fit.inertia, 0.0);
    }

    #[test]
    fn inertia_trace_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rows: Vec<Vec<f64>> = (0..60)
            .map(|_| vec![rng.random_range(0.0..1.0), rng.random_range(0.0..1.0)])
            .collect();
        let points = DenseMatrix::from_rows(&rows).unwrap();
        for seed in 0..10 {
            let fit = kmeans_fit(
                &points,
                5,
                &KMeansOptions {
                    restarts: 1,
                    seed,
                    ..KMeansOptions::default()
                },
            )
            .unwrap();
            for w in fit.inertia_trace.windows(2) {
                assert!(w[1] <= w[0] + 1e-12);
            }
        }
    }

    #[test]
    fn deterministic_and_rejects_bad_k() {
        let (points, _) = blobs(5, 3);
        assert_eq!(kmeans(&points, 3, 5, 4).unwrap(), kmeans(&points, 3, 5, 4).unwrap());
        assert!(kmeans(&points, 11, 0, 1).is_err());
        assert!(kmeans(&points, 0, 0, 1).is_err());
        assert!(kmeans(&points, 2, 0, 0).is_err());
    }
}
