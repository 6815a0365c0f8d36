//! External clustering quality against reference classes.
//!
//! All measures are computed from the contingency table `n_kc` (items in
//! cluster `k` and class `c`), with `n_k`, `n_c` the margins and `N` the
//! item count:
//!
//! - purity `= (1/N) Σ_k max_c n_kc`
//! - entropy `= Σ_k (n_k/N) · (−Σ_c (n_kc/n_k) log_C (n_kc/n_k))`, `C` the
//!   number of classes (0 when there is a single class)
//! - mutual information `= Σ_kc (n_kc/N) ln(n_kc N / (n_k n_c))`, in nats
//! - F-measure: F1 over item pairs placed in the same cluster versus the same
//!   class (1 when neither side has any such pair)

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ClusterLabels;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QualityScores {
    #[serde(rename = "mi")]
    pub mutual_information: f64,
    pub entropy: f64,
    pub purity: f64,
    pub fmeasure: f64,
}

impl QualityScores {
    /// Field-wise mean.
    pub fn mean(scores: &[QualityScores]) -> Option<QualityScores> {
        if scores.is_empty() {
            return None;
        }
        let n = scores.len() as f64;
        let avg = |f: fn(&QualityScores) -> f64| scores.iter().map(f).sum::<f64>() / n;
        Some(QualityScores {
            mutual_information: avg(|s| s.mutual_information),
            entropy: avg(|s| s.entropy),
            purity: avg(|s| s.purity),
            fmeasure: avg(|s| s.fmeasure),
        })
    }
}

struct Contingency {
    n: f64,
    /// (cluster, class) → count, over nonempty cells only.
    cells: BTreeMap<(usize, usize), f64>,
    clusters: BTreeMap<usize, f64>,
    classes: BTreeMap<usize, f64>,
}

impl Contingency {
    fn new(labels: &[usize], reference: &[usize]) -> Result<Self> {
        if labels.len() != reference.len() {
            return Err(Error::LengthMismatch {
                left: labels.len(),
                right: reference.len(),
            });
        }
        if labels.is_empty() {
            return Err(Error::InvalidParameter("cannot score an empty clustering".into()));
        }
        let mut cells = BTreeMap::new();
        let mut clusters = BTreeMap::new();
        let mut classes = BTreeMap::new();
        for (&k, &c) in labels.iter().zip(reference) {
            *cells.entry((k, c)).or_insert(0.0) += 1.0;
            *clusters.entry(k).or_insert(0.0) += 1.0;
            *classes.entry(c).or_insert(0.0) += 1.0;
        }
        Ok(Self {
            n: labels.len() as f64,
            cells,
            clusters,
            classes,
        })
    }
}

fn pairs(x: f64) -> f64 {
    x * (x - 1.0) / 2.0
}

pub fn eval_clustering(labels: &ClusterLabels, reference: &ClusterLabels) -> Result<QualityScores> {
    let t = Contingency::new(labels.as_slice(), reference.as_slice())?;
    let n = t.n;

    let mut best_per_cluster: BTreeMap<usize, f64> = BTreeMap::new();
    for (&(k, _), &v) in &t.cells {
        let e = best_per_cluster.entry(k).or_insert(0.0);
        *e = e.max(v);
    }
    let purity = best_per_cluster.values().sum::<f64>() / n;

    let num_classes = t.classes.len();
    let entropy = if num_classes < 2 {
        0.0
    } else {
        let base = (num_classes as f64).ln();
        let mut h = 0.0;
        for (&(k, _), &v) in &t.cells {
            let nk = t.clusters[&k];
            let p = v / nk;
            h -= (nk / n) * p * p.ln() / base;
        }
        h.max(0.0)
    };

    let mut mi = 0.0;
    for (&(k, c), &v) in &t.cells {
        mi += (v / n) * (v * n / (t.clusters[&k] * t.classes[&c])).ln();
    }
    let mutual_information = mi.max(0.0);

    let same_both: f64 = t.cells.values().map(|&v| pairs(v)).sum();
    let same_cluster: f64 = t.clusters.values().map(|&v| pairs(v)).sum();
    let same_class: f64 = t.classes.values().map(|&v| pairs(v)).sum();
    let fmeasure = if same_cluster + same_class == 0.0 {
        1.0
    } else {
        2.0 * same_both / (same_cluster + same_class)
    };

    Ok(QualityScores {
        mutual_information,
        entropy,
        purity,
        fmeasure,
    })
}

/// Fraction of items that agree with the reference under the best one-to-one
/// matching of clusters to classes.
///
/// Exhaustive over matchings, so both label sets are limited to 9 values.
pub fn matched_accuracy(labels: &[usize], reference: &[usize]) -> Result<f64> {
    let t = Contingency::new(labels, reference)?;
    let ks: Vec<usize> = t.clusters.keys().copied().collect();
    let cs: Vec<usize> = t.classes.keys().copied().collect();
    let size = ks.len().max(cs.len());
    if size > 9 {
        return Err(Error::InvalidParameter(format!(
            "matched accuracy supports at most 9 clusters, got {size}"
        )));
    }
    let count = |a: usize, b: usize| -> f64 {
        match (ks.get(a), cs.get(b)) {
            (Some(&k), Some(&c)) => t.cells.get(&(k, c)).copied().unwrap_or(0.0),
            _ => 0.0,
        }
    };
    let mut perm: Vec<usize> = (0..size).collect();
    let mut best = 0.0f64;
    permute(&mut perm, 0, &mut |p| {
        let agree: f64 = p.iter().enumerate().map(|(a, &b)| count(a, b)).sum();
        best = best.max(agree);
    });
    Ok(best / t.n)
}

fn permute(p: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == p.len() {
        visit(p);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permute(p, start + 1, visit);
        p.swap(start, i);
    }
}
