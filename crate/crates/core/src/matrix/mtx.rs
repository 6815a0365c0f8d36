//! Matrix Market exchange format.
//!
//! Sparse matrices are written as `coordinate real general` (1-based
//! triplets), dense ones as `array real general` (column-major). Values use
//! the shortest decimal that round-trips, so write → read is bitwise exact.
//! The reader also accepts `integer` fields and `symmetric` storage.

use std::fmt::Write as _;

use super::{DenseMatrix, SparseMatrix};
use crate::error::{Error, Result};

pub const COORDINATE_HEADER: &str = "%%MatrixMarket matrix coordinate real general";
pub const ARRAY_HEADER: &str = "%%MatrixMarket matrix array real general";

/// A matrix read from either layout.
#[derive(Debug, Clone, PartialEq)]
pub enum MarketMatrix {
    Sparse(SparseMatrix),
    Dense(DenseMatrix),
}

impl MarketMatrix {
    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            MarketMatrix::Sparse(s) => s.to_dense(),
            MarketMatrix::Dense(d) => d.clone(),
        }
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        match self {
            MarketMatrix::Sparse(s) => s.clone(),
            MarketMatrix::Dense(d) => d.to_sparse(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            MarketMatrix::Sparse(s) => s.shape(),
            MarketMatrix::Dense(d) => d.shape(),
        }
    }
}

fn format_value(out: &mut String, v: f64) {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        let _ = write!(out, "{}", v as i64);
    } else {
        let _ = write!(out, "{v:e}");
    }
}

pub fn write_sparse(m: &SparseMatrix) -> String {
    let mut out = String::with_capacity(32 + m.nnz() * 24);
    out.push_str(COORDINATE_HEADER);
    out.push('\n');
    let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), m.nnz());
    for (i, j, v) in m.iter() {
        let _ = write!(out, "{} {} ", i + 1, j + 1);
        format_value(&mut out, v);
        out.push('\n');
    }
    out
}

pub fn write_dense(m: &DenseMatrix) -> String {
    let mut out = String::with_capacity(32 + m.rows() * m.cols() * 20);
    out.push_str(ARRAY_HEADER);
    out.push('\n');
    let _ = writeln!(out, "{} {}", m.rows(), m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            format_value(&mut out, m.get(i, j));
            out.push('\n');
        }
    }
    out
}

struct Header {
    coordinate: bool,
    symmetric: bool,
}

fn parse_header(line: &str) -> Result<Header> {
    let lower = line.to_ascii_lowercase();
    let parts: Vec<&str> = lower.split_whitespace().collect();
    let bad = |msg: &str| Error::Parse {
        line: 1,
        message: format!("{msg}: {line:?}"),
    };
    if parts.len() != 5 || parts[0] != "%%matrixmarket" || parts[1] != "matrix" {
        return Err(bad("not a Matrix Market header"));
    }
    let coordinate = match parts[2] {
        "coordinate" => true,
        "array" => false,
        _ => return Err(bad("unsupported layout")),
    };
    if !matches!(parts[3], "real" | "integer") {
        return Err(bad("unsupported field type"));
    }
    let symmetric = match parts[4] {
        "general" => false,
        "symmetric" => true,
        _ => return Err(bad("unsupported symmetry")),
    };
    Ok(Header {
        coordinate,
        symmetric,
    })
}

pub fn read(text: &str) -> Result<MarketMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let header = parse_header(first.trim())?;
    let mut body = lines
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));

    let (size_line, size) = body.next().ok_or(Error::Parse {
        line: 2,
        message: "missing size line".into(),
    })?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Parse {
            line: size_line,
            message: format!("bad size line: {e}"),
        })?;

    let parse_f = |n: usize, t: &str| {
        t.parse::<f64>().map_err(|e| Error::Parse {
            line: n,
            message: format!("bad value {t:?}: {e}"),
        })
    };
    let parse_idx = |n: usize, t: &str, max: usize| -> Result<usize> {
        let v = t.parse::<usize>().map_err(|e| Error::Parse {
            line: n,
            message: format!("bad index {t:?}: {e}"),
        })?;
        if v == 0 || v > max {
            return Err(Error::Parse {
                line: n,
                message: format!("index {v} outside 1..={max}"),
            });
        }
        Ok(v - 1)
    };

    if header.coordinate {
        let &[rows, cols, nnz] = dims.as_slice() else {
            return Err(Error::Parse {
                line: size_line,
                message: "coordinate size line needs rows cols nnz".into(),
            });
        };
        let mut triplets = Vec::with_capacity(nnz);
        for (n, line) in body {
            let t: Vec<&str> = line.split_whitespace().collect();
            if t.len() != 3 {
                return Err(Error::Parse {
                    line: n,
                    message: "expected `row col value`".into(),
                });
            }
            let i = parse_idx(n, t[0], rows)?;
            let j = parse_idx(n, t[1], cols)?;
            let v = parse_f(n, t[2])?;
            triplets.push((i, j, v));
            if header.symmetric && i != j {
                triplets.push((j, i, v));
            }
        }
        let declared = triplets.len();
        let expected = if header.symmetric { declared } else { nnz };
        if declared != expected {
            return Err(Error::Parse {
                line: size_line,
                message: format!("declared {nnz} entries, found {declared}"),
            });
        }
        Ok(MarketMatrix::Sparse(SparseMatrix::from_triplets(rows, cols, triplets)?))
    } else {
        let &[rows, cols] = dims.as_slice() else {
            return Err(Error::Parse {
                line: size_line,
                message: "array size line needs rows cols".into(),
            });
        };
        let mut values = Vec::with_capacity(rows * cols);
        for (n, line) in body {
            for t in line.split_whitespace() {
                values.push(parse_f(n, t)?);
            }
        }
        let mut m = DenseMatrix::zeros(rows, cols);
        if header.symmetric {
            // Lower triangle, column by column.
            let mut it = values.into_iter();
            for j in 0..cols {
                for i in j..rows {
                    let v = it.next().ok_or_else(|| short(size_line))?;
                    m.set(i, j, v);
                    m.set(j, i, v);
                }
            }
        } else {
            if values.len() != rows * cols {
                return Err(Error::Parse {
                    line: size_line,
                    message: format!("expected {} values, found {}", rows * cols, values.len()),
                });
            }
            for (idx, v) in values.into_iter().enumerate() {
                m.set(idx % rows, idx / rows, v);
            }
        }
        let d = m.as_slice().to_vec();
        Ok(MarketMatrix::Dense(DenseMatrix::new(rows, cols, d)?))
    }
}

fn short(line: usize) -> Error {
    Error::Parse {
        line,
        message: "too few values for declared size".into(),
    }
}

pub fn read_sparse(text: &str) -> Result<SparseMatrix> {
    Ok(read(text)?.to_sparse())
}

pub fn read_dense(text: &str) -> Result<DenseMatrix> {
    Ok(read(text)?.to_dense())
}
