//! Plain-text complex matrices: one row per line, entries separated by
//! whitespace, each entry `re` or `re,im`. `#` starts a comment.

use qlight::{CMatrix, C64};
use qlight_netlist::parse::parse_number;

use crate::error::{CliError, CliResult};

fn entry(tok: &str) -> Option<C64> {
    match tok.split_once(',') {
        Some((re, im)) => Some(C64::new(parse_number(re)?, parse_number(im)?)),
        None => parse_number(tok).map(C64::from),
    }
}

pub fn parse_matrix(text: &str) -> CliResult<CMatrix> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| {
                entry(t).ok_or_else(|| {
                    CliError::Parse(format!("line {}: bad matrix entry `{t}`", idx + 1))
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if n == 0 {
        return Err(CliError::Parse("matrix file is empty".into()));
    }
    if let Some(r) = rows.iter().position(|r| r.len() != n) {
        return Err(CliError::Parse(format!(
            "matrix is not square: row {} has {} entries, expected {n}",
            r + 1,
            rows[r].len()
        )));
    }
    Ok(CMatrix::from_row_major(rows.concat()))
}

pub fn expect_dim(m: &CMatrix, dim: usize) -> CliResult<()> {
    if m.dim() != dim {
        return Err(CliError::Validation(format!(
            "expected a {dim}x{dim} matrix, got {0}x{0}",
            m.dim()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_and_complex_entries() {
        let m = parse_matrix("# swap-ish\n0 1,0.5\n-1e-3 0,-1\n").unwrap();
        assert_eq!(m[(0, 1)], C64::new(1.0, 0.5));
        assert_eq!(m[(1, 0)], C64::new(-1e-3, 0.0));
        assert_eq!(m[(1, 1)], C64::new(0.0, -1.0));
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(matches!(parse_matrix("1 0\n0\n"), Err(CliError::Parse(_))));
        assert!(matches!(
            parse_matrix("1 x\n0 1\n"),
            Err(CliError::Parse(_))
        ));
    }
}
