//! Plain-text matrix format: a header line `rows cols q`, then one line per
//! row of space-separated decimal element encodings.

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;

use super::MatrixGF;

pub fn write_matrix(m: &MatrixGF) -> String {
    let mut out = format!("{} {} {}\n", m.rows(), m.cols(), m.field().q());
    for row in m.row_iter() {
        let line: Vec<String> = row.iter().map(|s| s.rep().to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the matrix text format. When `field` is given its order must match
/// the header; otherwise the default field of that order is used.
pub fn parse_matrix(text: &str, field: Option<&FieldSpec>) -> Result<MatrixGF> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad header token {t:?}"))))
        .collect::<Result<_>>()?;
    let [rows, cols, q] = nums[..] else {
        return Err(Error::Parse(format!("header must be `rows cols q`, got {header:?}")));
    };
    let field = match field {
        Some(f) if f.q() as usize == q => f.clone(),
        Some(f) => return Err(Error::Parse(format!("header q={q} but field is {f}"))),
        None => FieldSpec::with_order(q as u32)?,
    };
    let mut reps = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {r}")))?;
        let vals: Vec<u32> = line
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad entry {t:?} in row {r}"))))
            .collect::<Result<_>>()?;
        if vals.len() != cols {
            return Err(Error::Parse(format!("row {r} has {} entries, expected {cols}", vals.len())));
        }
        reps.extend(vals);
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing data after last row".into()));
    }
    MatrixGF::from_reps(&field, rows, cols, &reps)
}
