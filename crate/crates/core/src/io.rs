//! Plain-text matrix input: one row per line, entries separated by
//! whitespace. Batch files hold several matrices separated by blank lines;
//! `#` starts a comment.

use crate::error::{Error, Result};
use crate::tropical::WeightMatrix;

/// A matrix as read from a batch file, before validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    /// 1-based line of the first row.
    pub line: usize,
    pub rows: Vec<Vec<i64>>,
}

impl Record {
    pub fn matrix(&self) -> Result<WeightMatrix> {
        WeightMatrix::from_rows(&self.rows)
    }
}

fn parse_row(line: &str, lineno: usize) -> Result<Vec<i64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>()
                .map_err(|_| Error::Parse(format!("line {lineno}: `{tok}` is not an integer")))
        })
        .collect()
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head)
}

/// Splits a batch file into records.
pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let mut current: Option<Record> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            // comment-only lines do not end a record
            if raw.trim().is_empty() {
                out.extend(current.take());
            }
            continue;
        }
        let row = parse_row(line, k + 1)?;
        current
            .get_or_insert_with(|| Record {
                line: k + 1,
                rows: Vec::new(),
            })
            .rows
            .push(row);
    }
    out.extend(current);
    Ok(out)
}

/// Reads exactly one matrix.
pub fn parse_matrix(text: &str) -> Result<WeightMatrix> {
    let records = parse_records(text)?;
    match records.as_slice() {
        [r] => r.matrix(),
        [] => Err(Error::Parse("no matrix found".into())),
        _ => Err(Error::Parse(format!(
            "expected one matrix, found {} blocks",
            records.len()
        ))),
    }
}

/// Renders a matrix in the input format.
pub fn render_matrix(w: &WeightMatrix) -> String {
    let width = w
        .rows()
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    w.rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| format!("{v:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}
