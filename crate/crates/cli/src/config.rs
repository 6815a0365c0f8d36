//! Run configuration: optional TOML file values, overridden by flags, then
//! hashed for the reports.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Keys accepted in a `--config` file. Every key is optional; flags win.
#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub fields: Option<String>,
    pub stoplist: Option<PathBuf>,
    pub min_length: Option<usize>,
    pub log_scale: Option<bool>,
    pub method: Option<String>,
    pub rank: Option<usize>,
    pub ranks: Option<String>,
    pub maxiter: Option<usize>,
    pub stable_window: Option<usize>,
    pub points: Option<usize>,
    pub k: Option<usize>,
    pub kernel: Option<String>,
    pub alpha: Option<f64>,
    pub c: Option<f64>,
    pub d: Option<u32>,
    pub theta: Option<f64>,
    pub trials: Option<usize>,
    pub nmf_iterations: Option<usize>,
    pub nmf_rank: Option<usize>,
    pub dataset: Option<String>,
    pub n: Option<usize>,
    pub noise: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Flag, then file value, then default.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Hex SHA-256 of the resolved configuration serialized as JSON.
pub fn config_hash<T: Serialize>(resolved: &T) -> Result<String> {
    let json = serde_json::to_string(resolved)?;
    Ok(hex::encode(Sha256::digest(json.as_bytes())))
}

/// Field tags such as `"W"` or `"T,W"`.
pub fn parse_fields(s: &str) -> Result<BTreeSet<char>> {
    let mut out = BTreeSet::new();
    for part in s.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()) {
        let mut chars = part.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_uppercase() => {
                out.insert(c);
            }
            _ => bail!("invalid field tag {part:?}; expected single uppercase letters like W or T,W"),
        }
    }
    if out.is_empty() {
        bail!("no field tags given");
    }
    Ok(out)
}

/// Rank lists: `5`, `1..40` (inclusive), `10..600:10`, or comma-separated
/// mixtures. The result is sorted and deduplicated.
pub fn parse_ranks(s: &str) -> Result<Vec<usize>> {
    let mut out = BTreeSet::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (range, step) = match part.split_once(':') {
            Some((r, st)) => (r, st.trim().parse::<usize>().with_context(|| format!("bad step in {part:?}"))?),
            None => (part, 1),
        };
        if step == 0 {
            bail!("step must be positive in {part:?}");
        }
        match range.split_once("..") {
            Some((a, b)) => {
                let a: usize = a.trim().parse().with_context(|| format!("bad range start in {part:?}"))?;
                let b: usize = b.trim().parse().with_context(|| format!("bad range end in {part:?}"))?;
                if a > b {
                    bail!("empty range {part:?}");
                }
                out.extend((a..=b).step_by(step));
            }
            None => {
                out.insert(range.parse::<usize>().with_context(|| format!("bad rank {part:?}"))?);
            }
        }
    }
    if out.is_empty() {
        bail!("empty rank list");
    }
    if out.contains(&0) {
        bail!("ranks must be at least 1");
    }
    Ok(out.into_iter().collect())
}
