//! `svdlsi`: build term-document matrices from SMART collections, construct
//! raw, low-rank and completed indexes, evaluate them against relevance
//! judgments, sweep decomposition ranks and run the clustering methods.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "svdlsi", version, about = "Latent semantic indexing and spectral clustering experiments")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// TOML file with default parameter values; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (default: current directory).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Only print errors.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Corpus preparation.
    #[command(subcommand)]
    Corpus(CorpusCommand),
    /// Build a raw, rank-K SVD or completed index from a matrix.
    Index(IndexArgs),
    /// Evaluate an index against queries and relevance judgments.
    Eval(EvalArgs),
    /// Average precision over SVD ranks, plus completion and NMF baselines.
    Sweep(SweepArgs),
    /// Cluster the columns of a matrix.
    Cluster(ClusterArgs),
    /// Generate a synthetic 2-D clustering dataset.
    Synth(SynthArgs),
}

#[derive(Debug, Subcommand)]
pub enum CorpusCommand {
    /// Tokenize a SMART collection into a weighted term-document matrix.
    Build(BuildArgs),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// SMART document file (e.g. ADI.ALL).
    #[arg(long)]
    pub docs: PathBuf,
    /// SMART query file, weighted over the document vocabulary.
    #[arg(long)]
    pub queries: Option<PathBuf>,
    /// Stop list, one word per line; defaults to the built-in English list.
    #[arg(long)]
    pub stoplist: Option<PathBuf>,
    /// Field tags whose text is indexed, e.g. `W` or `T,W` (default W).
    #[arg(long)]
    pub fields: Option<String>,
    /// Shortest token kept (default 2).
    #[arg(long)]
    pub min_length: Option<usize>,
    /// Keep raw counts instead of ln(1 + count).
    #[arg(long)]
    pub no_log_scale: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexMethod {
    Raw,
    Svd,
    Complete,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    /// Term-document matrix in Matrix Market format.
    #[arg(long)]
    pub matrix: PathBuf,
    #[arg(long, value_enum)]
    pub method: Option<IndexMethod>,
    /// Truncation rank for `svd`.
    #[arg(long)]
    pub rank: Option<usize>,
    /// Iteration cap for `complete` (default 100).
    #[arg(long)]
    pub maxiter: Option<usize>,
    /// Unchanged iterations required to stop `complete` (default 3).
    #[arg(long)]
    pub stable_window: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Index matrix written by `index`.
    #[arg(long)]
    pub index: PathBuf,
    /// Directory written by `corpus build --queries`.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Relevance judgments (e.g. ADI.REL).
    #[arg(long)]
    pub qrels: PathBuf,
    /// Interpolation points (default 11).
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Directory written by `corpus build --queries`.
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub qrels: PathBuf,
    /// Ranks such as `1..40`, `10..600:10` or `5,10,20`.
    #[arg(long)]
    pub ranks: Option<String>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub maxiter: Option<usize>,
    #[arg(long)]
    pub stable_window: Option<usize>,
    /// NMF baseline rank (default: the best SVD rank).
    #[arg(long)]
    pub nmf_rank: Option<usize>,
    /// NMF iterations (default 200).
    #[arg(long)]
    pub nmf_iterations: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kernel {
    Gaussian,
    Polynomial,
    Sigmoid,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Matrix whose columns are the items to cluster.
    #[arg(long)]
    pub matrix: PathBuf,
    /// `spectral`, `bipartite-svd` or `nmf`.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Kernel for `spectral`; its parameters are required.
    #[arg(long, value_enum)]
    pub kernel: Option<Kernel>,
    /// Gaussian width.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Polynomial offset or sigmoid slope.
    #[arg(long)]
    pub c: Option<f64>,
    /// Polynomial degree.
    #[arg(long)]
    pub d: Option<u32>,
    /// Sigmoid offset.
    #[arg(long)]
    pub theta: Option<f64>,
    /// NMF trials averaged in the scores (default 5).
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub nmf_iterations: Option<usize>,
    /// Reference labels (`item,label` CSV or one label per line).
    #[arg(long)]
    pub reference: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dataset {
    Rings,
    Moons,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, value_enum)]
    pub dataset: Option<Dataset>,
    /// Points per class (default 100).
    #[arg(long)]
    pub n: Option<usize>,
    /// Gaussian noise for `moons` (default 0.1).
    #[arg(long)]
    pub noise: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.quiet {
            log::LevelFilter::Error
        } else {
            log::LevelFilter::Info
        })
        .parse_env("SVDLSI_LOG")
        .format_timestamp(None)
        .init();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
