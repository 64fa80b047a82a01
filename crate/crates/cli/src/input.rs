//! Matrix input: whitespace text (one row per line) or a JSON array of rows.

use polytropes::io::{parse_records, Record};
use polytropes::tropical::WeightMatrix;
use polytropes::{Error, Result};

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('[')
}

fn json_rows(value: serde_json::Value) -> Result<Vec<Vec<i64>>> {
    serde_json::from_value(value)
        .map_err(|e| Error::Parse(format!("expected a 2-D integer array: {e}")))
}

/// Reads one matrix. Inline text may separate rows with `;`.
pub fn parse_matrix(text: &str) -> Result<WeightMatrix> {
    if is_json(text) {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        return WeightMatrix::from_rows(&json_rows(value)?);
    }
    polytropes::io::parse_matrix(&text.replace(';', "\n"))
}

/// Reads a batch file: blank-line separated text blocks, or a JSON array of
/// matrices.
pub fn parse_batch(text: &str) -> Result<Vec<Record>> {
    if !is_json(text) {
        return parse_records(text);
    }
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let serde_json::Value::Array(items) = value else {
        return Err(Error::Parse("expected an array of matrices".into()));
    };
    items
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            Ok(Record {
                line: k + 1,
                rows: json_rows(v)?,
            })
        })
        .collect()
}
