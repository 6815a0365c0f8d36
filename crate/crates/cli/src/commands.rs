//! Subcommand implementations. Each resolves its parameters, computes every
//! output in memory and then commits them together.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use svdlsi::cluster::synthetic::{two_moons, two_rings};
use svdlsi::cluster::{bipartite_svd_cluster, matched_accuracy, nmf_cluster_with, spectral_cluster, Method, QualityScores, NMF_ITERATIONS};
use svdlsi::corpus::{
    build_matrix, build_query_matrix, english_stopwords, log_scale, parse_qrels, parse_smart, parse_stoplist, query_counts,
    TermDocMatrix, TokenizerConfig, Vocabulary,
};
use svdlsi::experiment::{best_rank, Prepared};
use svdlsi::graphs::KernelSpec;
use svdlsi::lsi::{complete, CompletionOptions};
use svdlsi::matrix::{full_svd, mtx};
use svdlsi::retrieval::{evaluate, EvalReport, IndexInfo, QueryMatrix};
use svdlsi::{ClusterLabels, SvdFactors};

use crate::config::{config_hash, parse_fields, parse_ranks, pick, FileConfig};
use crate::output::Outputs;
use crate::{BuildArgs, Cli, ClusterArgs, Command, CorpusCommand, Dataset, EvalArgs, IndexArgs, IndexMethod, Kernel, SweepArgs, SynthArgs};

/// Shared context of one invocation.
struct Ctx {
    file: FileConfig,
    seed: u64,
    out: PathBuf,
    quiet: bool,
}

impl Ctx {
    fn say(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            println!("{}", msg.as_ref());
        }
    }

    fn commit(&self, outputs: Outputs) -> Result<()> {
        for p in outputs.commit(&self.out)? {
            log::info!("wrote {}", p.display());
        }
        Ok(())
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let ctx = Ctx {
        seed: pick(cli.seed, file.seed, 0),
        out: pick(cli.out, file.out.clone(), PathBuf::from(".")),
        quiet: cli.quiet,
        file,
    };
    match cli.command {
        Command::Corpus(CorpusCommand::Build(a)) => corpus_build(&ctx, a),
        Command::Index(a) => index(&ctx, a),
        Command::Eval(a) => eval(&ctx, a),
        Command::Sweep(a) => sweep(&ctx, a),
        Command::Cluster(a) => cluster(&ctx, a),
        Command::Synth(a) => synth(&ctx, a),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).with_context(|| format!("reading {}", path.display()))
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn value_enum<T: ValueEnum>(s: &str, key: &str) -> Result<T> {
    T::from_str(s, true).map_err(|e| anyhow!("config key {key}: {e}"))
}

fn read_matrix(path: &Path) -> Result<mtx::MarketMatrix> {
    mtx::read(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_ids(path: &Path) -> Result<Vec<usize>> {
    read(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            l.trim()
                .parse()
                .with_context(|| format!("{}: line {}: expected an id", path.display(), n + 1))
        })
        .collect()
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

#[derive(Debug, Serialize)]
struct BuildConfig {
    docs: String,
    queries: Option<String>,
    stoplist: Option<String>,
    fields: BTreeSet<char>,
    min_length: usize,
    log_scale: bool,
}

#[derive(Debug, Serialize)]
struct BuildReport {
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    nnz_percent: f64,
    queries: Option<usize>,
    empty_queries: Vec<usize>,
    config_hash: String,
}

fn corpus_build(ctx: &Ctx, a: BuildArgs) -> Result<()> {
    let f = &ctx.file;
    let stoplist = a.stoplist.or(f.stoplist.clone());
    let cfg = BuildConfig {
        docs: path_str(&a.docs),
        queries: a.queries.as_deref().map(path_str),
        stoplist: stoplist.as_deref().map(path_str),
        fields: parse_fields(&pick(a.fields, f.fields.clone(), "W".into()))?,
        min_length: pick(a.min_length, f.min_length, 2),
        log_scale: !a.no_log_scale && f.log_scale.unwrap_or(true),
    };
    let hash = config_hash(&cfg)?;
    let tokenizer = TokenizerConfig {
        stopwords: match &stoplist {
            Some(p) => parse_stoplist(&read(p)?),
            None => english_stopwords(),
        },
        min_length: cfg.min_length,
    };
    let docs = parse_smart(&read(&a.docs)?, &cfg.fields).with_context(|| format!("parsing {}", a.docs.display()))?;
    if docs.is_empty() {
        bail!("{} contains no documents", a.docs.display());
    }
    let counts = build_matrix(&docs, &tokenizer).with_context(|| format!("indexing {}", a.docs.display()))?;
    let stats = counts.stats();
    let terms = if cfg.log_scale { log_scale(&counts)? } else { counts };

    let mut out = Outputs::new();
    out.add("matrix.mtx", mtx::write_sparse(&terms.matrix));
    out.add_lines("vocabulary.txt", terms.vocabulary.terms());
    out.add_lines("doc_ids.txt", &terms.doc_ids);
    let mut report = BuildReport {
        m: stats.m,
        n: stats.n,
        nnz_percent: stats.nnz_percent,
        queries: None,
        empty_queries: Vec::new(),
        config_hash: hash,
    };
    if let Some(qpath) = &a.queries {
        let queries = parse_smart(&read(qpath)?, &cfg.fields).with_context(|| format!("parsing {}", qpath.display()))?;
        let (qm, empty) = if cfg.log_scale {
            build_query_matrix(&queries, &terms.vocabulary, &tokenizer)?
        } else {
            query_counts(&queries, &terms.vocabulary, &tokenizer)?
        };
        for id in &empty {
            log::warn!("query {id} has no terms in the vocabulary");
        }
        out.add("queries.mtx", mtx::write_sparse(qm.weights()));
        out.add_lines("query_ids.txt", qm.ids());
        report.queries = Some(qm.len());
        report.empty_queries = empty;
    }
    out.add_json("stats.json", &report)?;
    ctx.commit(out)?;
    ctx.say(format!(
        "M={} N={} nnz={:.3}%{}",
        report.m,
        report.n,
        report.nnz_percent,
        report.queries.map(|q| format!(" queries={q}")).unwrap_or_default()
    ));
    Ok(())
}

#[derive(Debug, Serialize)]
struct IndexConfig {
    matrix: String,
    method: IndexMethod,
    rank: Option<usize>,
    maxiter: Option<usize>,
    stable_window: Option<usize>,
}

/// Metadata written next to an index matrix.
#[derive(Debug, Serialize, Deserialize)]
struct IndexMeta {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conviter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ps_percent: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    norms: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    singular_values: Option<Vec<f64>>,
    source_sha256: String,
    config_hash: Option<String>,
}

const SVD_CACHE: &str = "svd-cache";

/// Reuses a full factorization cached under `dir` when it was computed from
/// the same matrix bytes.
fn load_svd_cache(dir: &Path, source: &str) -> Option<SvdFactors> {
    let stamp = std::fs::read_to_string(dir.join("source.sha256")).ok()?;
    if stamp.trim() != source {
        return None;
    }
    let left = mtx::read_dense(&std::fs::read_to_string(dir.join("left.mtx")).ok()?).ok()?;
    let right = mtx::read_dense(&std::fs::read_to_string(dir.join("right.mtx")).ok()?).ok()?;
    let values = std::fs::read_to_string(dir.join("values.txt"))
        .ok()?
        .lines()
        .map(|l| l.trim().parse::<f64>().ok())
        .collect::<Option<Vec<_>>>()?;
    SvdFactors::new(left, values, right).ok()
}

fn index(ctx: &Ctx, a: IndexArgs) -> Result<()> {
    let f = &ctx.file;
    let method = match (a.method, &f.method) {
        (Some(m), _) => m,
        (None, Some(s)) => value_enum(s, "method")?,
        (None, None) => IndexMethod::Raw,
    };
    let cfg = IndexConfig {
        matrix: path_str(&a.matrix),
        method,
        rank: (method == IndexMethod::Svd).then(|| a.rank.or(f.rank)).flatten(),
        maxiter: (method == IndexMethod::Complete).then(|| pick(a.maxiter, f.maxiter, 100)),
        stable_window: (method == IndexMethod::Complete).then(|| pick(a.stable_window, f.stable_window, 3)),
    };
    let hash = config_hash(&cfg)?;
    let bytes = read_bytes(&a.matrix)?;
    let source = sha256_hex(&bytes);
    let text = String::from_utf8(bytes.clone()).with_context(|| format!("{} is not UTF-8", a.matrix.display()))?;
    let matrix = mtx::read(&text).with_context(|| format!("parsing {}", a.matrix.display()))?;
    let mut meta = IndexMeta {
        kind: String::new(),
        rank: None,
        conviter: None,
        converged: None,
        iterations: None,
        ps_percent: None,
        norms: None,
        singular_values: None,
        source_sha256: source.clone(),
        config_hash: Some(hash),
    };
    let mut out = Outputs::new();
    match method {
        IndexMethod::Raw => {
            meta.kind = "raw".into();
            out.add("index.mtx", bytes);
            ctx.say(format!("raw index {}x{}", matrix.shape().0, matrix.shape().1));
        }
        IndexMethod::Svd => {
            let k = cfg.rank.ok_or_else(|| anyhow!("--rank is required for the svd method"))?;
            let cache = ctx.out.join(SVD_CACHE);
            let factors = match load_svd_cache(&cache, &source) {
                Some(fac) => {
                    log::info!("reusing factorization in {}", cache.display());
                    fac
                }
                None => {
                    let fac = full_svd(&matrix.to_sparse());
                    out.add(format!("{SVD_CACHE}/left.mtx"), mtx::write_dense(fac.left()));
                    out.add(format!("{SVD_CACHE}/right.mtx"), mtx::write_dense(fac.right()));
                    out.add_lines(format!("{SVD_CACHE}/values.txt"), fac.values());
                    out.add(format!("{SVD_CACHE}/source.sha256"), format!("{source}\n"));
                    fac
                }
            };
            let truncated = factors.truncate(k).context("invalid rank")?;
            meta.kind = "svd".into();
            meta.rank = Some(k);
            meta.singular_values = Some(truncated.values().to_vec());
            out.add("index.mtx", mtx::write_dense(&truncated.reconstruct()));
            ctx.say(format!("rank-{k} index, sigma_{k} = {:.6}", truncated.values()[k - 1]));
        }
        IndexMethod::Complete => {
            let (completed, trace) = complete(&matrix.to_sparse(), cfg.maxiter.unwrap_or(100), cfg.stable_window.unwrap_or(3))?;
            if !trace.converged {
                log::warn!("completion did not stabilize within {} iterations", trace.iterations);
            }
            meta.kind = "complete".into();
            meta.conviter = Some(trace.conviter);
            meta.converged = Some(trace.converged);
            meta.iterations = Some(trace.iterations);
            meta.ps_percent = Some(trace.ps_percent);
            meta.norms = Some(trace.norms.clone());
            out.add("index.mtx", mtx::write_dense(&completed));
            ctx.say(format!(
                "completed index, conviter={} converged={} %PS={:.4}",
                trace.conviter, trace.converged, trace.ps_percent
            ));
        }
    }
    out.add_json("index.json", &meta)?;
    ctx.commit(out)
}

/// Queries and document ids written by `corpus build --queries`.
struct CorpusDir {
    matrix: PathBuf,
    vocabulary: PathBuf,
    doc_ids: Vec<usize>,
    queries: QueryMatrix,
}

fn load_corpus_dir(dir: &Path) -> Result<CorpusDir> {
    let qpath = dir.join("queries.mtx");
    if !qpath.is_file() {
        bail!("{} has no queries.mtx; run `corpus build --queries`", dir.display());
    }
    let weights = read_matrix(&qpath)?.to_sparse();
    let ids = read_ids(&dir.join("query_ids.txt"))?;
    let queries = QueryMatrix::new(ids, weights).context("query ids do not match queries.mtx rows")?;
    Ok(CorpusDir {
        matrix: dir.join("matrix.mtx"),
        vocabulary: dir.join("vocabulary.txt"),
        doc_ids: read_ids(&dir.join("doc_ids.txt"))?,
        queries,
    })
}

#[derive(Debug, Serialize)]
struct EvalConfig {
    index: String,
    corpus: String,
    qrels: String,
    points: usize,
}

#[derive(Debug, Serialize)]
struct EvalOutput {
    #[serde(flatten)]
    report: EvalReport,
    config_hash: String,
}

fn index_info(index_path: &Path) -> IndexInfo {
    let meta = std::fs::read_to_string(index_path.with_extension("json"))
        .ok()
        .and_then(|t| serde_json::from_str::<IndexMeta>(&t).ok());
    match meta {
        Some(m) => IndexInfo {
            kind: m.kind,
            rank: m.rank,
            conviter: m.conviter,
        },
        None => IndexInfo::raw(),
    }
}

fn log_warnings(report: &EvalReport) {
    for w in &report.warnings {
        log::warn!("{w}");
    }
}

fn eval(ctx: &Ctx, a: EvalArgs) -> Result<()> {
    let cfg = EvalConfig {
        index: path_str(&a.index),
        corpus: path_str(&a.corpus),
        qrels: path_str(&a.qrels),
        points: pick(a.points, ctx.file.points, 11),
    };
    let hash = config_hash(&cfg)?;
    let corpus = load_corpus_dir(&a.corpus)?;
    let judgments = parse_qrels(&read(&a.qrels)?).with_context(|| format!("parsing {}", a.qrels.display()))?;
    let index = read_matrix(&a.index)?;
    let info = index_info(&a.index);
    let report = match &index {
        mtx::MarketMatrix::Sparse(s) => evaluate(&corpus.queries, s, &corpus.doc_ids, &judgments, cfg.points, info),
        mtx::MarketMatrix::Dense(d) => evaluate(&corpus.queries, d, &corpus.doc_ids, &judgments, cfg.points, info),
    }
    .context("evaluating index")?;
    log_warnings(&report);
    ctx.say(format!(
        "{} queries, mean {}-point average precision {:.4}",
        report.per_query.len(),
        report.points,
        report.mean_avgp
    ));
    let mut out = Outputs::new();
    out.add_json("eval.json", &EvalOutput { report, config_hash: hash })?;
    ctx.commit(out)
}

#[derive(Debug, Serialize)]
struct SweepConfig {
    corpus: String,
    qrels: String,
    ranks: Vec<usize>,
    points: usize,
    maxiter: usize,
    stable_window: usize,
    nmf_rank: Option<usize>,
    nmf_iterations: usize,
    seed: u64,
}

#[derive(Debug, Serialize)]
struct RankMean {
    rank: usize,
    mean_avgp: f64,
}

#[derive(Debug, Serialize)]
struct SweepReport {
    svd: Vec<RankMean>,
    best_rank: usize,
    best_mean: f64,
    completion_mean: f64,
    conviter: usize,
    converged: bool,
    nmf_rank: usize,
    nmf_mean: f64,
    config_hash: String,
}

fn sweep(ctx: &Ctx, a: SweepArgs) -> Result<()> {
    let f = &ctx.file;
    let cfg = SweepConfig {
        corpus: path_str(&a.corpus),
        qrels: path_str(&a.qrels),
        ranks: parse_ranks(&pick(a.ranks, f.ranks.clone(), "1..40".into()))?,
        points: pick(a.points, f.points, 11),
        maxiter: pick(a.maxiter, f.maxiter, 100),
        stable_window: pick(a.stable_window, f.stable_window, 3),
        nmf_rank: a.nmf_rank.or(f.nmf_rank),
        nmf_iterations: pick(a.nmf_iterations, f.nmf_iterations, NMF_ITERATIONS),
        seed: ctx.seed,
    };
    let hash = config_hash(&cfg)?;
    let corpus = load_corpus_dir(&a.corpus)?;
    let matrix = read_matrix(&corpus.matrix)?.to_sparse();
    let terms = TermDocMatrix {
        vocabulary: Vocabulary::new(read(&corpus.vocabulary)?.lines().map(str::to_string)),
        doc_ids: corpus.doc_ids,
        matrix,
    };
    if terms.vocabulary.len() != terms.matrix.rows() {
        bail!(
            "vocabulary has {} terms but the matrix has {} rows",
            terms.vocabulary.len(),
            terms.matrix.rows()
        );
    }
    let max_rank = terms.matrix.rows().min(terms.matrix.cols());
    if let Some(&k) = cfg.ranks.iter().find(|&&k| k > max_rank) {
        bail!("rank {k} exceeds min(M, N) = {max_rank}");
    }
    let p = Prepared {
        stats: terms.stats(),
        terms,
        queries: corpus.queries,
        judgments: parse_qrels(&read(&a.qrels)?).with_context(|| format!("parsing {}", a.qrels.display()))?,
        empty_queries: Vec::new(),
        points: cfg.points,
    };
    let sweep = p.svd_sweep(&p.full_svd(), &cfg.ranks).context("evaluating SVD ranks")?;
    if let Some((_, first)) = sweep.first() {
        log_warnings(first);
    }
    let (best_rank, best_mean) = best_rank(&sweep).expect("rank list is never empty");
    let (completion, trace) = p.evaluate_completion(CompletionOptions {
        maxiter: cfg.maxiter,
        stable_window: cfg.stable_window,
    })?;
    let nmf_rank = cfg.nmf_rank.unwrap_or(best_rank);
    let nmf = p.evaluate_nmf(nmf_rank, cfg.nmf_iterations, cfg.seed)?;

    let mut csv = String::from("index,rank,mean_avgp\n");
    for (k, r) in &sweep {
        csv.push_str(&format!("svd,{k},{}\n", r.mean_avgp));
    }
    csv.push_str(&format!("complete,,{}\n", completion.mean_avgp));
    csv.push_str(&format!("nmf,{nmf_rank},{}\n", nmf.mean_avgp));
    let report = SweepReport {
        svd: sweep
            .iter()
            .map(|(k, r)| RankMean {
                rank: *k,
                mean_avgp: r.mean_avgp,
            })
            .collect(),
        best_rank,
        best_mean,
        completion_mean: completion.mean_avgp,
        conviter: trace.conviter,
        converged: trace.converged,
        nmf_rank,
        nmf_mean: nmf.mean_avgp,
        config_hash: hash,
    };
    ctx.say(format!(
        "SVD best {best_mean:.4} at rank {best_rank}; completion {:.4} (conviter {}); NMF rank {nmf_rank} {:.4}",
        completion.mean_avgp, trace.conviter, nmf.mean_avgp
    ));
    let mut out = Outputs::new();
    out.add("sweep.csv", csv);
    out.add_json("sweep.json", &report)?;
    ctx.commit(out)
}

#[derive(Debug, Serialize)]
struct ClusterConfig {
    matrix: String,
    method: Method,
    k: usize,
    kernel: Option<String>,
    trials: usize,
    nmf_iterations: Option<usize>,
    reference: Option<String>,
    seed: u64,
}

#[derive(Debug, Serialize)]
struct ClusterReport {
    method: Method,
    k: usize,
    seed: u64,
    trials: usize,
    items: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    scores: Option<QualityScores>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matched_accuracy: Option<f64>,
    config_hash: String,
}

fn kernel_spec(a: &ClusterArgs, f: &FileConfig) -> Result<KernelSpec> {
    let kernel = match (a.kernel, &f.kernel) {
        (Some(k), _) => k,
        (None, Some(s)) => value_enum(s, "kernel")?,
        (None, None) => bail!("--kernel is required for spectral clustering"),
    };
    // Kernel parameters are tuned per dataset, so none has a default.
    fn need<T>(v: Option<T>, name: &str, kernel: &str) -> Result<T> {
        v.ok_or_else(|| anyhow!("--{name} is required for the {kernel} kernel"))
    }
    let spec = match kernel {
        Kernel::Gaussian => KernelSpec::Gaussian {
            alpha: need(a.alpha.or(f.alpha), "alpha", "gaussian")?,
        },
        Kernel::Polynomial => KernelSpec::Polynomial {
            c: need(a.c.or(f.c), "c", "polynomial")?,
            d: need(a.d.or(f.d), "d", "polynomial")?,
        },
        Kernel::Sigmoid => KernelSpec::Sigmoid {
            c: need(a.c.or(f.c), "c", "sigmoid")?,
            theta: need(a.theta.or(f.theta), "theta", "sigmoid")?,
        },
    };
    spec.validate()?;
    Ok(spec)
}

/// `item,label` rows (header optional) or one label per line.
fn read_labels(path: &Path) -> Result<Vec<usize>> {
    let text = read(path)?;
    let mut labels = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (n == 0 && line.starts_with("item")) {
            continue;
        }
        let field = line.rsplit(',').next().unwrap_or(line).trim();
        labels.push(
            field
                .parse()
                .with_context(|| format!("{}: line {}: expected a label", path.display(), n + 1))?,
        );
    }
    Ok(labels)
}

fn labels_csv(labels: &[usize]) -> String {
    let mut s = String::from("item,label\n");
    for (i, l) in labels.iter().enumerate() {
        s.push_str(&format!("{i},{l}\n"));
    }
    s
}

fn cluster(ctx: &Ctx, a: ClusterArgs) -> Result<()> {
    let f = &ctx.file;
    let method: Method = pick(a.method.clone(), f.method.clone(), "spectral".into()).parse()?;
    let k = a.k.or(f.k).ok_or_else(|| anyhow!("--k is required"))?;
    let spec = (method == Method::Spectral).then(|| kernel_spec(&a, f)).transpose()?;
    let cfg = ClusterConfig {
        matrix: path_str(&a.matrix),
        method,
        k,
        kernel: spec.map(|s| format!("{s:?}")),
        trials: if method == Method::Nmf { pick(a.trials, f.trials, 5) } else { 1 },
        nmf_iterations: (method == Method::Nmf).then(|| pick(a.nmf_iterations, f.nmf_iterations, NMF_ITERATIONS)),
        reference: a.reference.as_deref().map(path_str),
        seed: ctx.seed,
    };
    let hash = config_hash(&cfg)?;
    let matrix = read_matrix(&a.matrix)?;
    let run = match method {
        Method::Spectral => spectral_cluster(&matrix.to_dense(), k, spec.expect("spectral has a kernel"), cfg.seed)?,
        Method::BipartiteSvd => bipartite_svd_cluster(&matrix.to_sparse(), k, cfg.seed)?,
        Method::Nmf => nmf_cluster_with(
            &matrix.to_sparse(),
            k,
            cfg.seed,
            cfg.trials,
            cfg.nmf_iterations.unwrap_or(NMF_ITERATIONS),
        )?,
    };
    let items = run.labels.len();
    let (scores, accuracy) = match &a.reference {
        Some(p) => {
            let reference = read_labels(p)?;
            if reference.len() != items {
                bail!("{} has {} labels for {items} items", p.display(), reference.len());
            }
            let scores = run.scores(&ClusterLabels::from_labels(reference.clone()))?;
            // Exhaustive matching is only defined for small label counts.
            let acc = matched_accuracy(run.labels.as_slice(), &reference).ok();
            (Some(scores), acc)
        }
        None => (None, None),
    };
    let report = ClusterReport {
        method,
        k,
        seed: cfg.seed,
        trials: run.trials(),
        items,
        scores,
        matched_accuracy: accuracy,
        config_hash: hash,
    };
    match (&report.scores, report.matched_accuracy) {
        (Some(s), acc) => ctx.say(format!(
            "{method} k={k}: purity {:.4} entropy {:.4} MI {:.4} F {:.4}{}",
            s.purity,
            s.entropy,
            s.mutual_information,
            s.fmeasure,
            acc.map(|a| format!(" accuracy {a:.4}")).unwrap_or_default()
        )),
        (None, _) => ctx.say(format!("{method} k={k}: {items} items labelled")),
    }
    let mut out = Outputs::new();
    out.add("labels.csv", labels_csv(run.labels.as_slice()));
    out.add_json("clusters.json", &report)?;
    ctx.commit(out)
}

#[derive(Debug, Serialize)]
struct SynthConfig {
    dataset: Dataset,
    n: usize,
    noise: Option<f64>,
    seed: u64,
}

#[derive(Debug, Serialize)]
struct SynthReport {
    dataset: Dataset,
    points: usize,
    classes: usize,
    config_hash: String,
}

fn synth(ctx: &Ctx, a: SynthArgs) -> Result<()> {
    let f = &ctx.file;
    let dataset = match (a.dataset, &f.dataset) {
        (Some(d), _) => d,
        (None, Some(s)) => value_enum(s, "dataset")?,
        (None, None) => Dataset::Rings,
    };
    let cfg = SynthConfig {
        dataset,
        n: pick(a.n, f.n, 100),
        noise: (dataset == Dataset::Moons).then(|| pick(a.noise, f.noise, 0.1)),
        seed: ctx.seed,
    };
    if cfg.n == 0 {
        bail!("--n must be positive");
    }
    let hash = config_hash(&cfg)?;
    let data = match dataset {
        Dataset::Rings => two_rings(cfg.n, cfg.seed),
        Dataset::Moons => two_moons(cfg.n, cfg.noise.unwrap_or(0.1), cfg.seed),
    };
    let report = SynthReport {
        dataset,
        points: data.labels.len(),
        classes: data.labels.k(),
        config_hash: hash,
    };
    ctx.say(format!("{} points in {} classes", report.points, report.classes));
    let mut out = Outputs::new();
    out.add("points.mtx", mtx::write_dense(&data.points));
    out.add("labels.csv", labels_csv(data.labels.as_slice()));
    out.add_json("synth.json", &report)?;
    ctx.commit(out)
}
