//! DIMACS-like Horn files.
//!
//! ```text
//! c comment
//! p horn <width> <clauses>
//! -1 -2 3 0
//! ```
//!
//! Literals are 1-based; negative literals are negated positions, at most one
//! literal per clause is positive, and `0` ends a clause.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{HornClause, HornCnf, HornError};

impl FromStr for HornCnf {
    type Err = HornError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, message: String| HornError::Parse { line, message };
        let mut header: Option<(usize, usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = HornClause::negative(Vec::new());
        let mut current_line = 0;
        let mut open = false;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                if header.is_some() {
                    return Err(err(line_no, "duplicate header".into()));
                }
                let fields: Vec<&str> = rest.split_whitespace().collect();
                let [kind, width, count] = fields.as_slice() else {
                    return Err(err(line_no, "header must be `p horn <width> <clauses>`".into()));
                };
                if *kind != "horn" {
                    return Err(err(line_no, format!("unsupported format `{kind}`")));
                }
                let width = width
                    .parse()
                    .map_err(|_| err(line_no, format!("bad width `{width}`")))?;
                let count = count
                    .parse()
                    .map_err(|_| err(line_no, format!("bad clause count `{count}`")))?;
                header = Some((width, count, line_no));
                continue;
            }
            let Some((width, _, _)) = header else {
                return Err(err(line_no, "clause before the `p horn` header".into()));
            };
            for token in line.split_whitespace() {
                let literal: i64 = token
                    .parse()
                    .map_err(|_| err(line_no, format!("bad literal `{token}`")))?;
                if !open {
                    current_line = line_no;
                    open = true;
                }
                if literal == 0 {
                    clauses.push(std::mem::replace(&mut current, HornClause::negative(Vec::new())));
                    open = false;
                    continue;
                }
                let position = literal.unsigned_abs() as usize;
                if position > width {
                    return Err(err(
                        line_no,
                        format!("literal {literal} exceeds width {width}"),
                    ));
                }
                if literal > 0 {
                    if current.positive.is_some() {
                        return Err(err(line_no, "more than one positive literal".into()));
                    }
                    current.positive = Some(position - 1);
                } else {
                    current.negatives.push(position - 1);
                }
            }
        }
        let Some((width, count, header_line)) = header else {
            return Err(err(0, "missing `p horn` header".into()));
        };
        if open {
            return Err(err(current_line, "clause lacks its `0` terminator".into()));
        }
        if clauses.len() != count {
            return Err(err(
                header_line,
                format!("header announces {count} clauses, found {}", clauses.len()),
            ));
        }
        HornCnf::new(width, clauses).map_err(|e| match e {
            HornError::Tautology { clause, position } => err(
                header_line,
                format!(
                    "clause {} contains both {} and -{}",
                    clause + 1,
                    position + 1,
                    position + 1
                ),
            ),
            other => other,
        })
    }
}

impl HornCnf {
    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p horn {} {}\n", self.width(), self.clauses().len());
        for clause in self.clauses() {
            for &p in &clause.negatives {
                let _ = write!(out, "-{} ", p + 1);
            }
            if let Some(p) = clause.positive {
                let _ = write!(out, "{} ", p + 1);
            }
            out.push_str("0\n");
        }
        out
    }
}
