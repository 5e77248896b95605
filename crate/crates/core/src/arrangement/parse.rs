//! The `.arr` text format.
//!
//! ```text
//! # comment
//! dim 3
//! 1 0 0
//! 1 -1/2 0
//! ```
//!
//! The `dim` header is optional when at least one hyperplane is given; the
//! dimension is then the length of the first row. Entries may be integers or
//! fractions `p/q`; each row is scaled to its primitive integer normal.

use super::{Arrangement, ArrangementError, Hyperplane};
use crate::exact::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("zero normal vector")]
    ZeroVector,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate hyperplane (same as line {first_line})")]
    Duplicate { first_line: usize },
    #[error("entry too large")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// One data row: line number plus its rational entries.
pub(crate) struct Row {
    pub line: usize,
    pub entries: Vec<Rational>,
}

/// Splits a file into an optional `dim` header and its data rows.
pub(crate) fn rows(text: &str) -> Result<(Option<usize>, Vec<Row>), ParseError> {
    let mut dim = None;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let malformed = |m: String| ParseError {
            line,
            kind: ParseErrorKind::Malformed(m),
        };
        if let Some(rest) = content.strip_prefix("dim") {
            if dim.is_some() || !out.is_empty() {
                return Err(malformed("`dim` header must come first and only once".into()));
            }
            let d = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| malformed(format!("bad dimension `{}`", rest.trim())))?;
            dim = Some(d);
            continue;
        }
        let entries = content
            .split_whitespace()
            .map(|tok| parse_rational(tok).map_err(|e| malformed(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(Row { line, entries });
    }
    Ok((dim, out))
}

pub(crate) fn row_hyperplane(row: &[Rational], line: usize) -> Result<Hyperplane, ParseError> {
    Hyperplane::from_rationals(row).map_err(|e| ParseError {
        line,
        kind: match e {
            ArrangementError::ZeroNormal => ParseErrorKind::ZeroVector,
            _ => ParseErrorKind::Overflow,
        },
    })
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement, ParseError> {
    let (header, rows) = rows(text)?;
    let dim = match (header, rows.first()) {
        (Some(d), _) => d,
        (None, Some(r)) => r.entries.len(),
        (None, None) => {
            return Err(ParseError {
                line: 0,
                kind: ParseErrorKind::Malformed("empty input without `dim` header".into()),
            })
        }
    };
    let mut hs: Vec<Hyperplane> = Vec::with_capacity(rows.len());
    let mut lines: Vec<usize> = Vec::with_capacity(rows.len());
    for row in rows {
        if row.entries.len() != dim {
            return Err(ParseError {
                line: row.line,
                kind: ParseErrorKind::DimensionMismatch {
                    expected: dim,
                    found: row.entries.len(),
                },
            });
        }
        let h = row_hyperplane(&row.entries, row.line)?;
        if let Some(p) = hs.iter().position(|g| g == &h) {
            return Err(ParseError {
                line: row.line,
                kind: ParseErrorKind::Duplicate { first_line: lines[p] },
            });
        }
        hs.push(h);
        lines.push(row.line);
    }
    Ok(Arrangement::new(dim, hs).expect("validated above"))
}
