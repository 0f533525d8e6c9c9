//! Text input for matrices.
//!
//! ```text
//! matrix  := json | diag
//! json    := '[' row (',' row)* ']'          rows of equal length
//! row     := '[' entry (',' entry)* ']'
//! entry   := string | integer
//! diag    := 'diag(' scalar (',' scalar)* ')'
//! string  := '"' scalar '"'
//! scalar  := real | imag | real ('+'|'-') imag
//! real    := ['-'] int ['/' int]
//! imag    := ['-'] [int ['/' int] ['*']] 'i'
//! ```

use serde_json::Value;
use thiserror::Error;

use super::gaussian::GaussianRational;
use super::matrix::GRMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixParseError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("expected an array of rows")]
    NotRows,
    #[error("matrix has no entries")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("entry ({row},{col}) {text:?} is not a Gaussian rational")]
    Entry { row: usize, col: usize, text: String },
    #[error("diag entry {index} {text:?} is not a Gaussian rational")]
    DiagEntry { index: usize, text: String },
}

fn entry(value: &Value, row: usize, col: usize) -> Result<GaussianRational, MatrixParseError> {
    let bad = |text: String| MatrixParseError::Entry { row, col, text };
    match value {
        Value::String(s) => s.parse().map_err(|_| bad(s.clone())),
        Value::Number(num) => match num.as_i64() {
            Some(v) => Ok(GaussianRational::from_int(v)),
            None => Err(bad(num.to_string())),
        },
        other => Err(bad(other.to_string())),
    }
}

pub fn parse_matrix(text: &str) -> Result<GRMatrix, MatrixParseError> {
    let trimmed = text.trim();
    if let Some(inner) = trimmed.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
        let diag = inner
            .split(',')
            .enumerate()
            .map(|(index, s)| s.parse().map_err(|_| MatrixParseError::DiagEntry { index, text: s.trim().to_string() }))
            .collect::<Result<Vec<GaussianRational>, _>>()?;
        return Ok(GRMatrix::diagonal(&diag));
    }
    let value: Value = serde_json::from_str(text).map_err(|e| MatrixParseError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Value::Array(rows) = value else { return Err(MatrixParseError::NotRows) };
    let mut out = Vec::with_capacity(rows.len());
    let mut width = None;
    for (r, row) in rows.iter().enumerate() {
        let Value::Array(cells) = row else { return Err(MatrixParseError::NotRows) };
        let expected = *width.get_or_insert(cells.len());
        if cells.len() != expected {
            return Err(MatrixParseError::Ragged { row: r, expected, found: cells.len() });
        }
        out.push(cells.iter().enumerate().map(|(c, v)| entry(v, r, c)).collect::<Result<Vec<_>, _>>()?);
    }
    if out.is_empty() || width == Some(0) {
        return Err(MatrixParseError::Empty);
    }
    Ok(GRMatrix::from_rows(out).expect("rows checked above"))
}
