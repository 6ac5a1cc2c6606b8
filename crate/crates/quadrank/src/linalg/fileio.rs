//! The text matrix format shared by the library and the CLI.
//!
//! ```text
//! field: 2 3
//! rows: 2
//! cols: 2
//! 1/1*sqrt(6);0
//! 0;1/1*sqrt(6)
//! ```
//!
//! A rational matrix uses the same layout with an empty `field:` line; its
//! entries are `sqrt(1)` terms. Emission is canonical and parsing an emitted
//! document reproduces the matrix bit-exactly. A field matrix over the empty
//! basis emits the rational header, so it parses back as a rational matrix.

use std::fmt::Write as _;

use super::{FieldMatrix, LinalgError, RationalMatrix};
use crate::field::PrimeBasis;

#[derive(Clone, Debug)]
pub enum ParsedMatrix {
    Field(FieldMatrix),
    Rational(RationalMatrix),
}

impl ParsedMatrix {
    pub fn into_rational(self) -> Result<RationalMatrix, LinalgError> {
        match self {
            ParsedMatrix::Rational(m) => Ok(m),
            ParsedMatrix::Field(m) => m.to_rational().ok_or_else(|| {
                LinalgError::Parse("matrix has radical entries; a rational matrix is required".into())
            }),
        }
    }

    pub fn into_field(self) -> FieldMatrix {
        match self {
            ParsedMatrix::Field(m) => m,
            ParsedMatrix::Rational(m) => m.to_field(&PrimeBasis::rationals()),
        }
    }
}

impl FieldMatrix {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("field:");
        for p in self.basis().primes() {
            let _ = write!(out, " {p}");
        }
        out.push('\n');
        let _ = writeln!(out, "rows: {}", self.rows());
        let _ = writeln!(out, "cols: {}", self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if j > 0 {
                    out.push(';');
                }
                let _ = write!(out, "{}", self.get(i, j));
            }
            out.push('\n');
        }
        out
    }
}

impl RationalMatrix {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("field:\n");
        let _ = writeln!(out, "rows: {}", self.rows());
        let _ = writeln!(out, "cols: {}", self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if j > 0 {
                    out.push(';');
                }
                let v = self.get(i, j);
                if num_traits::Zero::is_zero(v) {
                    out.push('0');
                } else {
                    let _ = write!(out, "{}/{}*sqrt(1)", v.numer(), v.denom());
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn parse_matrix(text: &str) -> Result<ParsedMatrix, LinalgError> {
    let mut lines = text.lines();
    let field_line = expect_header(lines.next(), "field")?;
    let rows_line = expect_header(lines.next(), "rows")?;
    let cols_line = expect_header(lines.next(), "cols")?;

    let primes: Vec<u64> = field_line
        .split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| LinalgError::Parse(format!("bad prime \"{t}\" in field header")))
        })
        .collect::<Result<_, _>>()?;
    let rows: usize = rows_line
        .trim()
        .parse()
        .map_err(|_| LinalgError::Parse(format!("bad row count \"{rows_line}\"")))?;
    let cols: usize = cols_line
        .trim()
        .parse()
        .map_err(|_| LinalgError::Parse(format!("bad column count \"{cols_line}\"")))?;

    let basis = PrimeBasis::new(&primes)?;
    let mut entries = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| LinalgError::Parse(format!("missing row {i}")))?;
        let cells: Vec<&str> = line.split(';').collect();
        if cells.len() != cols {
            return Err(LinalgError::Parse(format!(
                "row {i} has {} entries, expected {cols}",
                cells.len()
            )));
        }
        for cell in cells {
            entries.push(basis.parse_element(cell)?);
        }
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(LinalgError::Parse("trailing content after matrix body".into()));
    }
    let m = FieldMatrix::from_entries(&basis, rows, cols, entries)?;
    if basis.is_empty() {
        Ok(ParsedMatrix::Rational(
            m.to_rational().expect("all entries rational over Q"),
        ))
    } else {
        Ok(ParsedMatrix::Field(m))
    }
}

fn expect_header<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str, LinalgError> {
    let line = line.ok_or_else(|| LinalgError::Parse(format!("missing \"{key}:\" header")))?;
    line.strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(':'))
        .ok_or_else(|| LinalgError::Parse(format!("expected \"{key}:\" header, got \"{line}\"")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    #[test]
    fn field_matrix_round_trip() {
        let b = PrimeBasis::new(&[2, 3]).unwrap();
        let root6 = b.sqrt_of_u64(6).unwrap();
        let half = b.from_rational(BigRational::new(BigInt::from(-1), BigInt::from(2)));
        let m = FieldMatrix::from_fn(&b, 2, 3, |i, j| {
            if (i + j) % 2 == 0 {
                root6.add(&half).unwrap()
            } else {
                b.zero()
            }
        })
        .unwrap();
        let text = m.to_text();
        let parsed = match parse_matrix(&text).unwrap() {
            ParsedMatrix::Field(p) => p,
            _ => panic!("expected field matrix"),
        };
        assert_eq!(parsed, m);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn rational_matrix_round_trip() {
        let m = RationalMatrix::from_i64(2, 2, &[3, 0, -7, 1]).unwrap();
        let text = m.to_text();
        assert!(text.starts_with("field:\nrows: 2\ncols: 2\n"));
        let parsed = parse_matrix(&text).unwrap().into_rational().unwrap();
        assert_eq!(parsed, m);
        assert_eq!(parsed.to_text(), text);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("rows: 1\ncols: 1\n0\n").is_err());
        assert!(parse_matrix("field:\nrows: 1\ncols: 2\n0\n").is_err());
        assert!(parse_matrix("field:\nrows: 2\ncols: 1\n0\n").is_err());
        // radical entry under an empty field header
        assert!(parse_matrix("field:\nrows: 1\ncols: 1\n1/1*sqrt(2)\n").is_err());
    }
}
