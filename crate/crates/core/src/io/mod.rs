//! Text formats: Matrix Market (symmetric coordinate), edge lists, vectors,
//! coefficient files, sum-of-exponentials CSV, and run reports.
//!
//! Numbers are written with `{:e}`, the shortest representation that parses
//! back to the same `f64`, so every writer round-trips exactly.

mod coeffs;
mod report;

pub use coeffs::{
    format_coefficients, format_expsum, parse_coefficients, parse_expsum, read_coefficients, read_expsum,
    write_coefficients, write_expsum, Basis, CoefficientFile,
};
pub use report::{
    format_apply_report, format_cut_report, format_solve_report, parse_cut_report, parse_key_values, ReportFormat,
    RunHeader,
};

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::graph::WeightedGraph;
use crate::linalg::sparse::SparseSymMatrix;

pub(crate) fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `text` to `path`, creating or truncating the file.
pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

pub(crate) fn parse_f64(path: &Path, line: usize, tok: &str) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_error(path, line, format!("`{tok}` is not a number")))
}

fn parse_usize(path: &Path, line: usize, tok: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_error(path, line, format!("`{tok}` is not a nonnegative integer")))
}

/// Numbered lines that are neither blank nor comments (`#`, `%`).
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') && !l.starts_with('%'))
}

const MM_BANNER: &str = "%%MatrixMarket matrix coordinate real symmetric";

/// Parses `coordinate real symmetric` (or `integer symmetric`) Matrix Market
/// text. Entries may come from either triangle, but each unordered pair at
/// most once.
pub fn parse_matrix_market(text: &str, path: &Path) -> Result<SparseSymMatrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let banner = lines.next().map(|(_, l)| l).unwrap_or("");
    let words: Vec<String> = banner.split_whitespace().map(str::to_ascii_lowercase).collect();
    let ok = words.len() == 5
        && words[0] == "%%matrixmarket"
        && words[1] == "matrix"
        && words[2] == "coordinate"
        && (words[3] == "real" || words[3] == "integer")
        && words[4] == "symmetric";
    if !ok {
        return Err(parse_error(path, 1, format!("expected banner `{MM_BANNER}`")));
    }
    let mut body = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_line, size) = body
        .next()
        .ok_or_else(|| parse_error(path, 1, "missing size line"))?;
    let dims: Vec<&str> = size.split_whitespace().collect();
    if dims.len() != 3 {
        return Err(parse_error(path, size_line, "size line must be `rows cols entries`"));
    }
    let rows = parse_usize(path, size_line, dims[0])?;
    let cols = parse_usize(path, size_line, dims[1])?;
    let nnz = parse_usize(path, size_line, dims[2])?;
    if rows != cols {
        return Err(parse_error(path, size_line, format!("symmetric matrix must be square, got {rows}x{cols}")));
    }
    let mut seen = std::collections::HashSet::new();
    let mut triplets = Vec::with_capacity(nnz);
    for (line, l) in body {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(parse_error(path, line, "entry must be `row col value`"));
        }
        let i = parse_usize(path, line, toks[0])?;
        let j = parse_usize(path, line, toks[1])?;
        let v = parse_f64(path, line, toks[2])?;
        if i == 0 || j == 0 || i > rows || j > rows {
            return Err(parse_error(path, line, format!("index ({i}, {j}) outside 1..={rows}")));
        }
        if !v.is_finite() {
            return Err(parse_error(path, line, "value is not finite"));
        }
        let key = (i.min(j) - 1, i.max(j) - 1);
        if !seen.insert(key) {
            return Err(parse_error(path, line, format!("entry ({i}, {j}) given twice")));
        }
        triplets.push((key.0, key.1, v));
    }
    if triplets.len() != nnz {
        return Err(parse_error(
            path,
            size_line,
            format!("size line promises {nnz} entries, found {}", triplets.len()),
        ));
    }
    SparseSymMatrix::from_triplets(rows, &triplets)
}

pub fn read_matrix_market(path: &Path) -> Result<SparseSymMatrix> {
    parse_matrix_market(&read_text(path)?, path)
}

/// Lower triangle, 1-based.
pub fn format_matrix_market(m: &SparseSymMatrix) -> String {
    let mut out = format!("{MM_BANNER}\n{} {} {}\n", m.n(), m.n(), m.nnz());
    for (i, j, v) in m.entries() {
        out.push_str(&format!("{} {} {v:e}\n", j + 1, i + 1));
    }
    out
}

pub fn write_matrix_market(path: &Path, m: &SparseSymMatrix) -> Result<()> {
    write_text(path, &format_matrix_market(m))
}

/// Parses `u v [weight]` lines (weight defaults to 1). The vertex count is the
/// largest index seen plus one, or `n` when given.
pub fn parse_edge_list(text: &str, path: &Path, one_based: bool, n: Option<usize>) -> Result<WeightedGraph> {
    let mut edges = Vec::new();
    let mut max_index = 0;
    for (line, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if !(toks.len() == 2 || toks.len() == 3) {
            return Err(parse_error(path, line, "edge must be `u v [weight]`"));
        }
        let mut ends = [0; 2];
        for (e, tok) in ends.iter_mut().zip(&toks[..2]) {
            let raw = parse_usize(path, line, tok)?;
            *e = if one_based {
                raw.checked_sub(1)
                    .ok_or_else(|| parse_error(path, line, "vertex 0 in a 1-based edge list"))?
            } else {
                raw
            };
        }
        let w = match toks.get(2) {
            Some(t) => parse_f64(path, line, t)?,
            None => 1.0,
        };
        if !(w.is_finite() && w > 0.0) {
            return Err(parse_error(path, line, format!("weight {w} must be positive")));
        }
        if ends[0] == ends[1] {
            return Err(parse_error(path, line, format!("self-loop at vertex {}", toks[0])));
        }
        max_index = max_index.max(ends[0]).max(ends[1]);
        edges.push((ends[0], ends[1], w));
    }
    if edges.is_empty() {
        return Err(parse_error(path, 1, "edge list is empty"));
    }
    let n = n.unwrap_or(max_index + 1);
    if max_index >= n {
        return Err(parse_error(path, 1, format!("vertex {max_index} exceeds n = {n}")));
    }
    WeightedGraph::from_edges(n, &edges)
}

pub fn read_edge_list(path: &Path, one_based: bool) -> Result<WeightedGraph> {
    parse_edge_list(&read_text(path)?, path, one_based, None)
}

pub fn format_edge_list(g: &WeightedGraph, one_based: bool) -> String {
    let off = usize::from(one_based);
    g.edges()
        .iter()
        .map(|(u, v, w)| format!("{} {} {w:e}\n", u + off, v + off))
        .collect()
}

pub fn write_edge_list(path: &Path, g: &WeightedGraph, one_based: bool) -> Result<()> {
    write_text(path, &format_edge_list(g, one_based))
}

pub fn parse_vector(text: &str, path: &Path) -> Result<Vec<f64>> {
    content_lines(text)
        .map(|(line, l)| {
            let v = parse_f64(path, line, l)?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(parse_error(path, line, "value is not finite"))
            }
        })
        .collect()
}

pub fn read_vector(path: &Path) -> Result<Vec<f64>> {
    parse_vector(&read_text(path)?, path)
}

pub fn format_vector(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:e}\n")).collect()
}

pub fn write_vector(path: &Path, v: &[f64]) -> Result<()> {
    write_text(path, &format_vector(v))
}
