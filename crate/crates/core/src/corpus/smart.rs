//! SMART collection files: `.I <id>` records with tagged field sections, and
//! whitespace-separated relevance judgments.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::retrieval::RelevanceJudgments;

/// Field tags that may appear in SMART records.
pub const KNOWN_FIELDS: [char; 8] = ['T', 'A', 'B', 'W', 'X', 'K', 'N', 'C'];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: usize,
    /// Selected field bodies joined by newlines, in file order.
    pub text: String,
}

impl Document {
    pub fn new(id: usize, text: impl Into<String>) -> Self {
        Self {
            id,
            text: text.into(),
        }
    }
}

/// `.X` or `.X arg` on a line of its own.
fn tag_line(line: &str) -> Option<(char, Option<&str>)> {
    let rest = line.strip_prefix('.')?;
    let mut chars = rest.chars();
    let tag = chars.next().filter(|c| c.is_ascii_uppercase())?;
    let after = chars.as_str();
    if after.is_empty() {
        return Some((tag, None));
    }
    if !after.starts_with(char::is_whitespace) {
        return None;
    }
    let mut words = after.split_whitespace();
    let arg = words.next();
    if words.next().is_some() {
        return None;
    }
    Some((tag, arg))
}

struct Record {
    id: usize,
    parts: Vec<String>,
}

/// Parses every `.I` record, keeping the bodies of the `fields` tags.
pub fn parse_smart(content: &str, fields: &BTreeSet<char>) -> Result<Vec<Document>> {
    let mut docs: Vec<Document> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut current: Option<Record> = None;
    // None outside a field, Some(keep) inside one.
    let mut keep: Option<bool> = None;

    let finish = |rec: Record, docs: &mut Vec<Document>| {
        docs.push(Document::new(rec.id, rec.parts.join("\n")));
    };

    for (n, raw) in content.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim_end();
        match tag_line(line.trim_start()) {
            Some(('I', arg)) => {
                let id = arg
                    .ok_or_else(|| Error::Parse {
                        line: line_no,
                        message: "record has no id".into(),
                    })?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse {
                        line: line_no,
                        message: format!("bad record id: {e}"),
                    })?;
                if !seen.insert(id) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("duplicate record id {id}"),
                    });
                }
                if let Some(rec) = current.take() {
                    finish(rec, &mut docs);
                }
                current = Some(Record {
                    id,
                    parts: Vec::new(),
                });
                keep = None;
            }
            Some((tag, _)) => {
                let Some(rec) = current.as_mut() else {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("field .{tag} before any .I record"),
                    });
                };
                if !KNOWN_FIELDS.contains(&tag) {
                    log::warn!("line {line_no}: unknown field tag .{tag} ignored");
                }
                let k = fields.contains(&tag);
                if k {
                    rec.parts.push(String::new());
                }
                keep = Some(k);
            }
            None => {
                let Some(rec) = current.as_mut() else {
                    if line.trim().is_empty() {
                        continue;
                    }
                    return Err(Error::Parse {
                        line: line_no,
                        message: "text before any .I record".into(),
                    });
                };
                if keep == Some(true) {
                    let part = rec.parts.last_mut().expect("field opened");
                    if !part.is_empty() {
                        part.push('\n');
                    }
                    part.push_str(line);
                }
            }
        }
    }
    if let Some(rec) = current.take() {
        finish(rec, &mut docs);
    }
    Ok(docs)
}

/// Replaces ids by positions `1..=n`, for query files whose ids do not match
/// the numbering used in their judgments.
pub fn renumber(docs: &mut [Document]) {
    for (i, d) in docs.iter_mut().enumerate() {
        d.id = i + 1;
    }
}

/// Parses relevance judgments.
///
/// Each row starts with a query id. The document id is in the second column,
/// unless every row has at least three columns and a constant `0` in the
/// second, in which case it is in the third.
pub fn parse_qrels(content: &str) -> Result<RelevanceJudgments> {
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (n, line) in content.lines().enumerate() {
        let cols: Vec<&str> = line.split_whitespace().collect();
        if cols.is_empty() {
            continue;
        }
        if cols.len() < 2 {
            return Err(Error::Parse {
                line: n + 1,
                message: "expected at least a query id and a document id".into(),
            });
        }
        for c in &cols {
            if c.parse::<f64>().is_err() {
                return Err(Error::Parse {
                    line: n + 1,
                    message: format!("non-numeric field {c:?}"),
                });
            }
        }
        rows.push((n + 1, cols));
    }
    let trec = !rows.is_empty()
        && rows
            .iter()
            .all(|(_, c)| c.len() >= 3 && c[1].parse::<f64>() == Ok(0.0));
    let doc_col = if trec { 2 } else { 1 };

    let int = |line: usize, s: &str| {
        s.parse::<usize>().map_err(|e| Error::Parse {
            line,
            message: format!("bad id {s:?}: {e}"),
        })
    };
    let mut out = RelevanceJudgments::new();
    for (line, cols) in rows {
        out.insert(int(line, cols[0])?, int(line, cols[doc_col])?);
    }
    Ok(out)
}
