//! Text collections to weighted word-by-document matrices.

mod smart;
mod tokenize;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

pub use smart::{parse_qrels, parse_smart, renumber, Document, KNOWN_FIELDS};
pub use tokenize::{english_stopwords, parse_stoplist, tokenize, TokenizerConfig};

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::retrieval::QueryMatrix;

/// Sorted list of unique terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl Vocabulary {
    /// Sorts and deduplicates `terms`.
    pub fn new(terms: impl IntoIterator<Item = String>) -> Self {
        let set: BTreeSet<String> = terms.into_iter().collect();
        let terms: Vec<String> = set.into_iter().collect();
        let index = terms.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Self { terms, index }
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn get(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TermDocMatrix {
    pub matrix: SparseMatrix,
    pub vocabulary: Vocabulary,
    pub doc_ids: Vec<usize>,
}

/// Size statistics of a term-document matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusStats {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub nnz_percent: f64,
}

impl TermDocMatrix {
    pub fn stats(&self) -> CorpusStats {
        CorpusStats {
            m: self.matrix.rows(),
            n: self.matrix.cols(),
            nnz_percent: self.matrix.nnz_percent(),
        }
    }
}

/// Raw term counts, one column per document in input order.
pub fn build_matrix(docs: &[Document], config: &TokenizerConfig) -> Result<TermDocMatrix> {
    if docs.is_empty() {
        return Err(Error::InvalidParameter("no documents to index".into()));
    }
    let tokens: Vec<Vec<String>> = docs.iter().map(|d| config.tokenize(&d.text)).collect();
    let vocabulary = Vocabulary::new(tokens.iter().flatten().cloned());
    if vocabulary.is_empty() {
        return Err(Error::EmptyVocabulary);
    }
    let mut counts: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    for (j, toks) in tokens.iter().enumerate() {
        for t in toks {
            let i = vocabulary.get(t).expect("token is in vocabulary");
            *counts.entry((i, j)).or_insert(0.0) += 1.0;
        }
    }
    let matrix = SparseMatrix::from_triplets(
        vocabulary.len(),
        docs.len(),
        counts.into_iter().map(|((i, j), v)| (i, j, v)).collect(),
    )?;
    Ok(TermDocMatrix {
        matrix,
        vocabulary,
        doc_ids: docs.iter().map(|d| d.id).collect(),
    })
}

/// `a_ij ← ln(a_ij + 1)`; zeros stay zero.
pub fn log_scale_matrix(a: &SparseMatrix) -> Result<SparseMatrix> {
    a.ensure_nonnegative()?;
    Ok(a.map_values(f64::ln_1p))
}

pub fn log_scale(a: &TermDocMatrix) -> Result<TermDocMatrix> {
    Ok(TermDocMatrix {
        matrix: log_scale_matrix(&a.matrix)?,
        ..a.clone()
    })
}

/// `A ← A·D^{-1/2}` with `D = diag(AᵀA e)`: column `j` is divided by the
/// square root of `a_j · (A e)`.
pub fn column_normalize_matrix(a: &SparseMatrix) -> Result<SparseMatrix> {
    a.ensure_nonnegative()?;
    let row_sums = a.row_sums();
    let d = a.mul_vec_transposed(&row_sums);
    let zero: Vec<usize> = (0..d.len()).filter(|&j| d[j] <= 0.0).collect();
    if !zero.is_empty() {
        return Err(Error::ZeroColumns(zero));
    }
    let factors: Vec<f64> = d.iter().map(|v| 1.0 / v.sqrt()).collect();
    a.scale_columns(&factors)
}

pub fn column_normalize(a: &TermDocMatrix) -> Result<TermDocMatrix> {
    Ok(TermDocMatrix {
        matrix: column_normalize_matrix(&a.matrix)?,
        ..a.clone()
    })
}

/// Raw query-term counts restricted to `vocab`; also returns the ids of
/// queries that matched no term.
pub fn query_counts(queries: &[Document], vocab: &Vocabulary, config: &TokenizerConfig) -> Result<(QueryMatrix, Vec<usize>)> {
    let mut counts: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut empty = Vec::new();
    for (q, doc) in queries.iter().enumerate() {
        let mut any = false;
        for t in config.tokenize(&doc.text) {
            if let Some(i) = vocab.get(&t) {
                *counts.entry((q, i)).or_insert(0.0) += 1.0;
                any = true;
            }
        }
        if !any {
            log::warn!("query {} matches no vocabulary term", doc.id);
            empty.push(doc.id);
        }
    }
    let weights = SparseMatrix::from_triplets(
        queries.len(),
        vocab.len(),
        counts.into_iter().map(|((q, i), v)| (q, i, v)).collect(),
    )?;
    Ok((QueryMatrix::new(queries.iter().map(|d| d.id).collect(), weights)?, empty))
}

/// Query matrix weighted like the documents: counts, then `ln(1 + x)`.
pub fn build_query_matrix(queries: &[Document], vocab: &Vocabulary, config: &TokenizerConfig) -> Result<(QueryMatrix, Vec<usize>)> {
    let (raw, empty) = query_counts(queries, vocab, config)?;
    let scaled = log_scale_matrix(raw.weights())?;
    Ok((QueryMatrix::new(raw.ids().to_vec(), scaled)?, empty))
}
