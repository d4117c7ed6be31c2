//! Matrix file formats: Matrix Market (`array` or `coordinate`, complex or
//! real, general) and JSON `{"n": N, "entries": [[re, im], ...]}` row-major.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use nrange_core::{CMatrix, Complex64};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[value(name = "mtx")]
    MatrixMarket,
    Json,
}

impl Format {
    /// Guess from the file extension.
    pub fn from_path(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "mtx" | "mm" => Some(Format::MatrixMarket),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

impl ParseError {
    pub fn line(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { line, .. } => Some(*line),
            ParseError::Io { .. } => None,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

pub fn parse_matrix(path: &Path, format: Format) -> Result<CMatrix, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_str(&text, format)
}

pub fn parse_str(text: &str, format: Format) -> Result<CMatrix, ParseError> {
    match format {
        Format::Json => parse_json(text),
        Format::MatrixMarket => parse_matrix_market(text),
    }
}

fn parse_json(text: &str) -> Result<CMatrix, ParseError> {
    serde_json::from_str(text).map_err(|e| syntax(e.line().max(1), e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Layout {
    Array,
    Coordinate,
}

fn parse_matrix_market(text: &str) -> Result<CMatrix, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let last_line = text.lines().count().max(1);

    let (line_no, header) = lines.next().ok_or_else(|| syntax(1, "empty file"))?;
    let words: Vec<String> = header.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(syntax(line_no, "expected `%%MatrixMarket matrix <layout> <field> general`"));
    }
    let layout = match words[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        other => return Err(syntax(line_no, format!("unsupported layout `{other}`"))),
    };
    let complex = match words[3].as_str() {
        "complex" => true,
        "real" => false,
        other => return Err(syntax(line_no, format!("unsupported field `{other}`"))),
    };
    if words[4] != "general" {
        return Err(syntax(line_no, format!("unsupported symmetry `{}`", words[4])));
    }

    let mut data_lines = lines.filter(|(_, l)| !l.is_empty() && !l.starts_with('%'));
    let (size_line, size) = data_lines
        .next()
        .ok_or_else(|| syntax(last_line, "missing size line"))?;
    let dims: Vec<usize> = size
        .split_whitespace()
        .map(|w| w.parse().map_err(|_| syntax(size_line, format!("bad size `{w}`"))))
        .collect::<Result<_, _>>()?;
    let expected_fields = if layout == Layout::Array { 2 } else { 3 };
    if dims.len() != expected_fields {
        return Err(syntax(size_line, "malformed size line"));
    }
    let (rows, cols) = (dims[0], dims[1]);
    if rows != cols || rows == 0 {
        return Err(syntax(size_line, format!("matrix must be square and non-empty, got {rows}x{cols}")));
    }
    let n = rows;
    let value_fields = if complex { 2 } else { 1 };
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];

    let read_value = |line: usize, fields: &[&str]| -> Result<Complex64, ParseError> {
        let num = |w: &str| {
            f64::from_str(w)
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| syntax(line, format!("invalid or non-finite number `{w}`")))
        };
        let re = num(fields[0])?;
        let im = if complex { num(fields[1])? } else { 0.0 };
        Ok(Complex64::new(re, im))
    };

    let count = if layout == Layout::Array { n * n } else { dims[2] };
    for k in 0..count {
        let (line, content) = data_lines.next().ok_or_else(|| {
            syntax(last_line, format!("expected {count} entries, file ends after {k}"))
        })?;
        let fields: Vec<&str> = content.split_whitespace().collect();
        match layout {
            Layout::Array => {
                if fields.len() != value_fields {
                    return Err(syntax(line, format!("expected {value_fields} fields")));
                }
                // array entries are listed column by column
                let (i, j) = (k % n, k / n);
                data[i * n + j] = read_value(line, &fields)?;
            }
            Layout::Coordinate => {
                if fields.len() != 2 + value_fields {
                    return Err(syntax(line, format!("expected {} fields", 2 + value_fields)));
                }
                let index = |w: &str| match w.parse::<usize>() {
                    Ok(i) if (1..=n).contains(&i) => Ok(i - 1),
                    _ => Err(syntax(line, format!("index `{w}` out of range 1..={n}"))),
                };
                let (i, j) = (index(fields[0])?, index(fields[1])?);
                data[i * n + j] = read_value(line, &fields[2..])?;
            }
        }
    }
    if let Some((line, _)) = data_lines.next() {
        return Err(syntax(line, "unexpected data after the last entry"));
    }
    CMatrix::from_vec(n, data).map_err(|e| syntax(last_line, e.to_string()))
}

pub fn to_json(a: &CMatrix) -> String {
    crate::json::to_string(a).expect("matrices always serialize")
}

/// Matrix Market `array complex general`, 17 significant digits.
pub fn to_matrix_market(a: &CMatrix) -> String {
    let n = a.dim();
    let mut out = format!("%%MatrixMarket matrix array complex general\n{n} {n}\n");
    for j in 0..n {
        for i in 0..n {
            let z = a[(i, j)];
            let _ = writeln!(out, "{} {}", crate::json::float(z.re), crate::json::float(z.im));
        }
    }
    out
}
