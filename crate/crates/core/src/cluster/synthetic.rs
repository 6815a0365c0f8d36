//! Seeded 2-D point sets with known classes.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::matrix::{ClusterLabels, DenseMatrix};

/// Points as the columns of a 2×N matrix with their class labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub points: DenseMatrix,
    pub labels: ClusterLabels,
}

fn assemble(xs: Vec<[f64; 2]>, labels: Vec<usize>) -> Dataset {
    Dataset {
        points: DenseMatrix::from_columns(&xs).expect("finite coordinates"),
        labels: ClusterLabels::new(labels, 2).expect("two classes"),
    }
}

/// Two concentric rings of radius 1 and 5 with `per_ring` points each.
///
/// Points are spread evenly by angle with a quarter-step angular jitter and
/// Gaussian radial noise of standard deviation 0.05.
pub fn two_rings(per_ring: usize, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radial = Normal::new(0.0, 0.05).expect("valid deviation");
    let mut xs = Vec::with_capacity(2 * per_ring);
    let mut labels = Vec::with_capacity(2 * per_ring);
    for (class, radius) in [(0usize, 1.0), (1, 5.0)] {
        for i in 0..per_ring {
            let u: f64 = rng.random_range(-0.25..0.25);
            let theta = 2.0 * PI * (i as f64 + u) / per_ring as f64;
            let r = radius + radial.sample(&mut rng);
            xs.push([r * theta.cos(), r * theta.sin()]);
            labels.push(class);
        }
    }
    assemble(xs, labels)
}

/// Two interleaved half circles with isotropic Gaussian noise.
pub fn two_moons(per_moon: usize, noise: f64, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jitter = Normal::new(0.0, noise.max(0.0)).expect("valid deviation");
    let mut xs = Vec::with_capacity(2 * per_moon);
    let mut labels = Vec::with_capacity(2 * per_moon);
    let steps = per_moon.saturating_sub(1).max(1) as f64;
    for i in 0..per_moon {
        let t = PI * i as f64 / steps;
        xs.push([t.cos() + jitter.sample(&mut rng), t.sin() + jitter.sample(&mut rng)]);
        labels.push(0);
    }
    for i in 0..per_moon {
        let t = PI * i as f64 / steps;
        xs.push([
            1.0 - t.cos() + jitter.sample(&mut rng),
            0.5 - t.sin() + jitter.sample(&mut rng),
        ]);
        labels.push(1);
    }
    assemble(xs, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_geometry() {
        let d = two_rings(100, 3);
        assert_eq!(d.points.shape(), (2, 200));
        for j in 0..200 {
            let r = d.points.column(j).iter().map(|x| x * x).sum::<f64>().sqrt();
            let target = if d.labels.as_slice()[j] == 0 { 1.0 } else { 5.0 };
            assert!((r - target).abs() < 0.3);
        }
        assert_eq!(two_rings(100, 3), d);
        assert_ne!(two_rings(100, 4), d);
    }

    #[test]
    fn moons_shape() {
        let d = two_moons(50, 0.05, 1);
        assert_eq!(d.points.shape(), (2, 100));
        assert_eq!(d.labels.as_slice().iter().filter(|&&l| l == 1).count(), 50);
    }
}
