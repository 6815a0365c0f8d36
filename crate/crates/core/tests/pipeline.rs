//! Full retrieval runs over a small SMART collection written to disk.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

use svdlsi::corpus::{parse_qrels, parse_smart};
use svdlsi::experiment::{prepare, run_collection, Collection, PipelineConfig};
use svdlsi::lsi::CompletionOptions;

const DOCS: &str = "\
.I 1
.T
A title that is not indexed
.W
Mark Twain wrote about the river.
.I 2
.W
Samuel Clemens wrote about the river too.
.I 3
.W
Mark Twain is the pen name of Samuel Clemens.
.I 4
.W
Purple is a colour between red and blue.
.I 5
.W
The colour purple in paint.
.I 6
.W
Blue paint and red paint.
";

const QUERIES: &str = "\
.I 1
.W
Who was Mark Twain?
.I 2
.W
purple paint
.I 3
.W
nothing matches zzz
.I 4
.W
samuel clemens river
";

const QRELS: &str = "1 1 0 0\n1 2 0 0\n1 3 0 0\n2 4 0 0\n2 5 0 0\n2 6 0 0\n3 1 0 0\n";

fn write_collection() -> (PathBuf, [PathBuf; 3]) {
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!(
        "svdlsi-pipeline-{}-{}",
        std::process::id(),
        NEXT.fetch_add(1, Ordering::Relaxed)
    ));
    std::fs::create_dir_all(&dir).unwrap();
    let files = [dir.join("TOY.ALL"), dir.join("TOY.QRY"), dir.join("TOY.REL")];
    for (p, text) in files.iter().zip([DOCS, QUERIES, QRELS]) {
        std::fs::write(p, text).unwrap();
    }
    (dir, files)
}

fn load() -> Collection {
    let (dir, [d, q, r]) = write_collection();
    let c = Collection::load(&d, &q, &r, &BTreeSet::from(['W'])).unwrap();
    std::fs::remove_dir_all(dir).ok();
    c
}

#[test]
fn loads_documents_queries_and_judgments() {
    let c = load();
    assert_eq!(c.docs.len(), 6);
    assert_eq!(c.queries.len(), 4);
    assert!(!c.docs[0].text.contains("title"));
    assert_eq!(c.judgments.get(1), Some(&BTreeSet::from([1, 2, 3])));
    assert_eq!(c.judgments.get(4), None);
}

#[test]
fn missing_file_names_the_path() {
    let err = Collection::load(
        &PathBuf::from("/nonexistent/X.ALL"),
        &PathBuf::from("/nonexistent/X.QRY"),
        &PathBuf::from("/nonexistent/X.REL"),
        &BTreeSet::from(['W']),
    )
    .unwrap_err();
    assert!(err.to_string().contains("X.ALL"), "{err}");
}

#[test]
fn prepared_matrix_and_queries_share_a_vocabulary() {
    let p = prepare(&load(), &PipelineConfig::default()).unwrap();
    assert_eq!(p.stats.n, 6);
    assert_eq!(p.stats.m, p.terms.vocabulary.len());
    assert_eq!(p.queries.terms(), p.stats.m);
    assert_eq!(p.empty_queries, vec![3]);
    // Stop words and one-letter tokens are gone.
    for w in ["the", "is", "a", "about"] {
        assert!(p.terms.vocabulary.get(w).is_none(), "{w}");
    }
    assert!(p.terms.vocabulary.get("twain").is_some());
}

#[test]
fn every_index_scores_each_judged_query() {
    let p = prepare(&load(), &PipelineConfig::default()).unwrap();
    let raw = p.evaluate_raw().unwrap();
    // Query 3 matches nothing and query 4 has no judgments.
    assert_eq!(raw.per_query.iter().map(|q| q.qid).collect::<Vec<_>>(), vec![1, 2]);
    assert_eq!(raw.warnings.len(), 2);
    assert_eq!(raw.index.kind, "raw");

    let (completed, trace) = p.evaluate_completion(CompletionOptions::default()).unwrap();
    assert!(trace.converged);
    assert_eq!(completed.index.conviter, Some(trace.conviter));
    assert_eq!(trace.norms.len(), trace.iterations + 1);
    assert!(trace.norms.windows(2).all(|w| w[1] >= w[0]));

    let sweep = p.svd_sweep(&p.full_svd(), &[1, 2, 6]).unwrap();
    assert_eq!(sweep.iter().map(|(k, _)| *k).collect::<Vec<_>>(), vec![1, 2, 6]);
    // Full rank reproduces the raw index up to rounding.
    assert!((sweep[2].1.mean_avgp - raw.mean_avgp).abs() < 1e-9);
    assert!(p.svd_sweep(&p.full_svd(), &[7]).is_err());

    let nmf = p.evaluate_nmf(2, 100, 1).unwrap();
    assert_eq!(nmf.index.rank, Some(2));
    for r in [&raw, &completed, &nmf] {
        assert!((0.0..=1.0).contains(&r.mean_avgp));
    }
}

#[test]
fn summary_is_reproducible() {
    let c = load();
    let a = run_collection(&c, &PipelineConfig::default(), &[1, 2, 3, 4, 5, 6, 50]).unwrap();
    let b = run_collection(&c, &PipelineConfig::default(), &[1, 2, 3, 4, 5, 6, 50]).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    assert_eq!(a.queries, 2);
    assert!(a.svd_best_rank <= 6);
}

#[test]
fn parsing_matches_loaded_files() {
    let c = load();
    assert_eq!(c.docs, parse_smart(DOCS, &BTreeSet::from(['W'])).unwrap());
    assert_eq!(c.judgments, parse_qrels(QRELS).unwrap());
}
