//! Cosine retrieval over a term-document index and interpolated
//! average-precision evaluation.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, MatrixView, SparseMatrix};

/// Queries as rows over the index vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryMatrix {
    ids: Vec<usize>,
    weights: SparseMatrix,
}

impl QueryMatrix {
    pub fn new(ids: Vec<usize>, weights: SparseMatrix) -> Result<Self> {
        if ids.len() != weights.rows() {
            return Err(Error::LengthMismatch {
                left: ids.len(),
                right: weights.rows(),
            });
        }
        weights.ensure_nonnegative()?;
        Ok(Self { ids, weights })
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn weights(&self) -> &SparseMatrix {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Vocabulary size.
    pub fn terms(&self) -> usize {
        self.weights.cols()
    }

    /// Dense weight vector of query `q` (row position, not id).
    pub fn row(&self, q: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.weights.cols()];
        let (cols, vals) = self.weights.row(q);
        for (&c, &v) in cols.iter().zip(vals) {
            out[c] = v;
        }
        out
    }
}

/// Relevant document ids per query id.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelevanceJudgments {
    map: BTreeMap<usize, BTreeSet<usize>>,
}

impl RelevanceJudgments {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, query: usize, doc: usize) {
        self.map.entry(query).or_default().insert(doc);
    }

    pub fn get(&self, query: usize) -> Option<&BTreeSet<usize>> {
        self.map.get(&query)
    }

    /// Query ids in ascending order.
    pub fn queries(&self) -> impl Iterator<Item = usize> + '_ {
        self.map.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl FromIterator<(usize, usize)> for RelevanceJudgments {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        let mut r = Self::new();
        for (q, d) in iter {
            r.insert(q, d);
        }
        r
    }
}

/// Matrix retrieved against: raw, completed or low-rank.
#[derive(Debug, Clone, PartialEq)]
pub enum DocumentIndex {
    Dense(DenseMatrix),
    Sparse(SparseMatrix),
}

impl DocumentIndex {
    fn view(&self) -> &dyn MatrixView {
        match self {
            DocumentIndex::Dense(d) => d,
            DocumentIndex::Sparse(s) => s,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        let v = self.view();
        (v.nrows(), v.ncols())
    }
}

/// Precomputed column norms so many queries can share one pass.
pub struct Scorer<'a> {
    index: &'a dyn MatrixView,
    norms: Vec<f64>,
}

impl<'a> Scorer<'a> {
    pub fn new(index: &'a dyn MatrixView) -> Self {
        Self {
            norms: index.column_norms(),
            index,
        }
    }

    pub fn for_index(index: &'a DocumentIndex) -> Self {
        Self::new(index.view())
    }

    /// Cosine of `q` with every document, in document order.
    pub fn cosines(&self, q: &[f64]) -> Result<Vec<f64>> {
        if q.len() != self.index.nrows() {
            return Err(Error::Shape(format!(
                "query has {} terms but the index has {} rows",
                q.len(),
                self.index.nrows()
            )));
        }
        let qn = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if qn == 0.0 {
            return Err(Error::ZeroQuery);
        }
        let dots = self.index.apply_transposed(q);
        Ok(dots
            .iter()
            .zip(&self.norms)
            .map(|(&d, &n)| if n == 0.0 { 0.0 } else { d / (qn * n) })
            .collect())
    }

    /// `(document position, cosine)` sorted by descending score, ties by
    /// ascending position.
    pub fn rank(&self, q: &[f64]) -> Result<Vec<(usize, f64)>> {
        Ok(rank_scores(&self.cosines(q)?))
    }
}

pub fn rank_scores(scores: &[f64]) -> Vec<(usize, f64)> {
    let mut ranked: Vec<(usize, f64)> = scores.iter().copied().enumerate().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    ranked
}

/// Ranked cosine scores of `q` against the columns of `a`.
pub fn score_query(q: &[f64], a: &dyn MatrixView) -> Result<Vec<(usize, f64)>> {
    Scorer::new(a).rank(q)
}

/// Max precision `r_n/n` over cutoffs `n` whose recall `r_n/r_N` reaches `x`.
///
/// `ranking` lists document ids best first.
pub fn pseudo_precision(ranking: &[usize], relevant: &BTreeSet<usize>, x: f64) -> Result<f64> {
    if relevant.is_empty() {
        return Err(Error::EmptyRelevant);
    }
    let total = relevant.len() as f64;
    let mut hits = 0usize;
    let mut best = 0.0f64;
    for (n, doc) in ranking.iter().enumerate() {
        if relevant.contains(doc) {
            hits += 1;
        }
        if x <= hits as f64 / total {
            best = best.max(hits as f64 / (n + 1) as f64);
        }
    }
    Ok(best)
}

/// Mean of [`pseudo_precision`] at recall levels `0, 1/(I−1), …, 1`.
pub fn interpolated_avg_precision(ranking: &[usize], relevant: &BTreeSet<usize>, points: usize) -> Result<f64> {
    if points < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 interpolation points, got {points}"
        )));
    }
    if relevant.is_empty() {
        return Err(Error::EmptyRelevant);
    }
    // precision and hit count at every cutoff
    let total = relevant.len();
    let mut hits = 0usize;
    let cutoffs: Vec<(usize, f64)> = ranking
        .iter()
        .enumerate()
        .map(|(n, d)| {
            if relevant.contains(d) {
                hits += 1;
            }
            (hits, hits as f64 / (n + 1) as f64)
        })
        .collect();
    let steps = points - 1;
    let mut sum = 0.0;
    for level in 0..=steps {
        // x = level/steps ≤ hits/total, compared exactly in integers.
        let p = cutoffs
            .iter()
            .filter(|(h, _)| level * total <= h * steps)
            .map(|(_, p)| *p)
            .fold(0.0, f64::max);
        sum += p;
    }
    Ok(sum / points as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryScore {
    pub qid: usize,
    pub avgp: f64,
}

/// Description of the index being evaluated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndexInfo {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conviter: Option<usize>,
}

impl IndexInfo {
    pub fn raw() -> Self {
        Self {
            kind: "raw".into(),
            rank: None,
            conviter: None,
        }
    }

    pub fn svd(rank: usize) -> Self {
        Self {
            kind: "svd".into(),
            rank: Some(rank),
            conviter: None,
        }
    }

    pub fn completion(conviter: usize) -> Self {
        Self {
            kind: "complete".into(),
            rank: None,
            conviter: Some(conviter),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub index: IndexInfo,
    pub points: usize,
    pub per_query: Vec<QueryScore>,
    pub mean_avgp: f64,
    pub warnings: Vec<String>,
}

/// Scores every query against `index` and averages interpolated precision.
///
/// `doc_ids[j]` is the id of column `j`. Queries without judgments, or whose
/// weights are all zero, are skipped and reported in `warnings`.
pub fn evaluate(
    queries: &QueryMatrix,
    index: &dyn MatrixView,
    doc_ids: &[usize],
    judgments: &RelevanceJudgments,
    points: usize,
    info: IndexInfo,
) -> Result<EvalReport> {
    if queries.terms() != index.nrows() {
        return Err(Error::Shape(format!(
            "queries have {} terms but the index has {} term rows",
            queries.terms(),
            index.nrows()
        )));
    }
    if doc_ids.len() != index.ncols() {
        return Err(Error::Shape(format!(
            "{} document ids for an index with {} document columns",
            doc_ids.len(),
            index.ncols()
        )));
    }
    let scorer = Scorer::new(index);
    let mut per_query = Vec::new();
    let mut warnings = Vec::new();
    for (pos, &qid) in queries.ids().iter().enumerate() {
        let Some(relevant) = judgments.get(qid).filter(|r| !r.is_empty()) else {
            warnings.push(format!("query {qid} has no relevance judgments; skipped"));
            continue;
        };
        let ranked = match scorer.rank(&queries.row(pos)) {
            Ok(r) => r,
            Err(Error::ZeroQuery) => {
                warnings.push(format!("query {qid} matches no indexed terms; skipped"));
                continue;
            }
            Err(e) => return Err(e),
        };
        let ranking: Vec<usize> = ranked.iter().map(|&(j, _)| doc_ids[j]).collect();
        per_query.push(QueryScore {
            qid,
            avgp: interpolated_avg_precision(&ranking, relevant, points)?,
        });
    }
    for w in &warnings {
        log::warn!("{w}");
    }
    let mean_avgp = if per_query.is_empty() {
        0.0
    } else {
        per_query.iter().map(|q| q.avgp).sum::<f64>() / per_query.len() as f64
    };
    Ok(EvalReport {
        index: info,
        points,
        per_query,
        mean_avgp,
        warnings,
    })
}
