//! End-to-end retrieval runs over a SMART collection: build the weighted
//! term-document matrix and queries, then evaluate the raw, completed,
//! low-rank and NMF indexes.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::corpus::{build_matrix, build_query_matrix, log_scale, parse_qrels, parse_smart, CorpusStats, Document, TermDocMatrix, TokenizerConfig};
use crate::error::{Error, Result};
use crate::lsi::{complete_with, perfect_pair_percentage, word_similarity, CompletionOptions, CompletionTrace};
use crate::matrix::{full_svd, nmf_factorize_with, NmfOptions, SvdFactors};
use crate::retrieval::{evaluate, EvalReport, IndexInfo, QueryMatrix, RelevanceJudgments};

/// Parsed collection files.
#[derive(Debug, Clone, PartialEq)]
pub struct Collection {
    pub docs: Vec<Document>,
    pub queries: Vec<Document>,
    pub judgments: RelevanceJudgments,
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse { line, message } => Error::Io {
            path: path.display().to_string(),
            message: format!("line {line}: {message}"),
        },
        other => other,
    }
}

impl Collection {
    /// Reads a document file, a query file and a judgments file.
    pub fn load(docs: &Path, queries: &Path, qrels: &Path, fields: &BTreeSet<char>) -> Result<Self> {
        Ok(Self {
            docs: parse_smart(&read_text(docs)?, fields).map_err(|e| in_file(docs, e))?,
            queries: parse_smart(&read_text(queries)?, fields).map_err(|e| in_file(queries, e))?,
            judgments: parse_qrels(&read_text(qrels)?).map_err(|e| in_file(qrels, e))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub tokenizer: TokenizerConfig,
    /// Apply `ln(1 + x)` to documents and queries.
    pub log_scale: bool,
    /// Interpolation points for average precision.
    pub points: usize,
    pub completion: CompletionOptions,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            tokenizer: TokenizerConfig::default(),
            log_scale: true,
            points: 11,
            completion: CompletionOptions::default(),
        }
    }
}

/// Weighted matrix and queries ready for indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct Prepared {
    pub terms: TermDocMatrix,
    pub queries: QueryMatrix,
    pub judgments: RelevanceJudgments,
    pub stats: CorpusStats,
    /// Ids of queries that matched no vocabulary term.
    pub empty_queries: Vec<usize>,
    pub points: usize,
}

pub fn prepare(collection: &Collection, cfg: &PipelineConfig) -> Result<Prepared> {
    let counts = build_matrix(&collection.docs, &cfg.tokenizer)?;
    let stats = counts.stats();
    let terms = if cfg.log_scale { log_scale(&counts)? } else { counts };
    let (queries, empty_queries) = if cfg.log_scale {
        build_query_matrix(&collection.queries, &terms.vocabulary, &cfg.tokenizer)?
    } else {
        crate::corpus::query_counts(&collection.queries, &terms.vocabulary, &cfg.tokenizer)?
    };
    Ok(Prepared {
        terms,
        queries,
        judgments: collection.judgments.clone(),
        stats,
        empty_queries,
        points: cfg.points,
    })
}

impl Prepared {
    pub fn evaluate_raw(&self) -> Result<EvalReport> {
        evaluate(
            &self.queries,
            &self.terms.matrix,
            &self.terms.doc_ids,
            &self.judgments,
            self.points,
            IndexInfo::raw(),
        )
    }

    /// Completes the matrix and evaluates the completed index.
    pub fn evaluate_completion(&self, opts: CompletionOptions) -> Result<(EvalReport, CompletionTrace)> {
        let s = word_similarity(&self.terms.matrix)?;
        let (completed, trace) = complete_with(&self.terms.matrix, &s, opts)?;
        let report = evaluate(
            &self.queries,
            &completed,
            &self.terms.doc_ids,
            &self.judgments,
            self.points,
            IndexInfo::completion(trace.conviter),
        )?;
        Ok((report, trace))
    }

    pub fn perfect_pair_percentage(&self) -> Result<f64> {
        Ok(perfect_pair_percentage(&word_similarity(&self.terms.matrix)?))
    }

    pub fn full_svd(&self) -> SvdFactors {
        full_svd(&self.terms.matrix)
    }

    /// Evaluates the rank-`k` reconstruction for each rank, sharing one
    /// full factorization.
    pub fn svd_sweep(&self, factors: &SvdFactors, ranks: &[usize]) -> Result<Vec<(usize, EvalReport)>> {
        ranks
            .iter()
            .map(|&k| {
                let index = factors.truncate(k)?.reconstruct();
                let report = evaluate(
                    &self.queries,
                    &index,
                    &self.terms.doc_ids,
                    &self.judgments,
                    self.points,
                    IndexInfo::svd(k),
                )?;
                Ok((k, report))
            })
            .collect()
    }

    /// Evaluates the `B·C` reconstruction of a rank-`k` NMF.
    pub fn evaluate_nmf(&self, k: usize, iterations: usize, seed: u64) -> Result<EvalReport> {
        let opts = NmfOptions {
            track_objective: false,
            ..NmfOptions::new(iterations, seed)
        };
        let f = nmf_factorize_with(&self.terms.matrix, k, &opts)?;
        evaluate(
            &self.queries,
            &f.reconstruct(),
            &self.terms.doc_ids,
            &self.judgments,
            self.points,
            IndexInfo {
                kind: "nmf".into(),
                rank: Some(k),
                conviter: None,
            },
        )
    }
}

/// Best `(rank, mean)` of a sweep; the lowest rank wins ties.
pub fn best_rank(sweep: &[(usize, EvalReport)]) -> Option<(usize, f64)> {
    sweep
        .iter()
        .map(|(k, r)| (*k, r.mean_avgp))
        .fold(None, |best, cur| match best {
            Some((_, m)) if m >= cur.1 => best,
            _ => Some(cur),
        })
}

/// Headline numbers of a full run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub stats: CorpusStats,
    pub ps_percent: f64,
    pub queries: usize,
    pub raw_mean: f64,
    pub completion_mean: f64,
    pub conviter: usize,
    pub converged: bool,
    pub svd_best_rank: usize,
    pub svd_best_mean: f64,
}

/// Raw, completion and SVD-sweep evaluation of one collection.
pub fn run_collection(collection: &Collection, cfg: &PipelineConfig, ranks: &[usize]) -> Result<Summary> {
    let p = prepare(collection, cfg)?;
    let raw = p.evaluate_raw()?;
    let (completion, trace) = p.evaluate_completion(cfg.completion)?;
    let max_rank = p.terms.matrix.rows().min(p.terms.matrix.cols());
    let usable: Vec<usize> = ranks.iter().copied().filter(|&k| k >= 1 && k <= max_rank).collect();
    let sweep = p.svd_sweep(&p.full_svd(), &usable)?;
    let (svd_best_rank, svd_best_mean) = best_rank(&sweep).ok_or_else(|| Error::InvalidParameter("no usable SVD rank".into()))?;
    Ok(Summary {
        stats: p.stats.clone(),
        ps_percent: trace.ps_percent,
        queries: completion.per_query.len(),
        raw_mean: raw.mean_avgp,
        completion_mean: completion.mean_avgp,
        conviter: trace.conviter,
        converged: trace.converged,
        svd_best_rank,
        svd_best_mean,
    })
}
