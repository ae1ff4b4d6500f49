//! Text formats for integer matrices.
//!
//! * CSV: one row per line, comma-separated decimal integers.
//! * Grid: whitespace-separated integers, rows may be rectangular. Used for
//!   the golden block-row fixtures, which cover only a few block rows.
//! * Block layout: a human-readable rendering with `|` between block
//!   columns and a rule line between block rows.

use std::fmt::Write;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

pub fn to_csv(m: &IntMatrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

fn parse_cell(cell: &str, line: usize) -> Result<BigInt> {
    cell.trim().parse::<BigInt>().map_err(|e| Error::Parse {
        line,
        message: format!("{cell:?}: {e}"),
    })
}

pub fn from_csv(text: &str) -> Result<IntMatrix> {
    let rows = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| l.split(',').map(|c| parse_cell(c, n + 1)).collect())
        .collect::<Result<Vec<Vec<BigInt>>>>()?;
    IntMatrix::from_rows(rows)
}

/// Parses a whitespace-separated grid. All rows must share one width.
pub fn parse_grid(text: &str) -> Result<Vec<Vec<BigInt>>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|c| parse_cell(c, n + 1))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    line: n + 1,
                    message: format!("expected {} cells, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn to_grid(rows: &[&[BigInt]]) -> String {
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

/// Renders `m` with separators every `block` rows and columns.
///
/// With `max_width` set, cells inside a block are packed without spaces
/// when the spaced layout would exceed that many characters.
pub fn pretty_blocks(m: &IntMatrix, block: Option<usize>, max_width: Option<usize>) -> String {
    let k = m.size();
    let block = block.filter(|&b| b > 0 && k % b == 0).unwrap_or(k.max(1));
    let cell = m
        .rows()
        .flat_map(|r| r.iter())
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1);
    let groups = k / block;
    let spaced_width = k * (cell + 1) + 2 * groups.saturating_sub(1);
    let packed = cell == 1 && max_width.is_some_and(|w| spaced_width > w);

    let mut out = String::new();
    for (i, row) in m.rows().enumerate() {
        if i > 0 && i % block == 0 {
            let line_len = if packed {
                k + 3 * (groups - 1)
            } else {
                spaced_width.saturating_sub(1)
            };
            out.push_str(&"-".repeat(line_len));
            out.push('\n');
        }
        let mut line = String::new();
        for (j, x) in row.iter().enumerate() {
            if j > 0 && j % block == 0 {
                line.push_str(if packed { " | " } else { " |" });
            }
            if packed {
                let _ = write!(line, "{x}");
            } else {
                if j > 0 {
                    line.push(' ');
                }
                let _ = write!(line, "{x:>cell$}");
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_rejects_garbage() {
        assert!(matches!(
            from_csv("1,2\n3,x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(from_csv("1,2\n3\n").is_err());
    }

    #[test]
    fn csv_handles_big_entries() {
        let text = "123456789012345678901234567890,0\n1,-1\n";
        let m = from_csv(text).unwrap();
        assert_eq!(to_csv(&m), text);
    }

    #[test]
    fn grid_requires_rectangle() {
        assert_eq!(parse_grid("0 1 0\n1 1 1\n").unwrap().len(), 2);
        assert!(parse_grid("0 1\n1 1 1\n").is_err());
    }

    #[test]
    fn block_layout() {
        let m = IntMatrix::from_fn(4, |i, j| if i == j { 1 } else { 0 });
        let s = pretty_blocks(&m, Some(2), None);
        assert_eq!(s, "1 0 | 0 0\n0 1 | 0 0\n---------\n0 0 | 1 0\n0 0 | 0 1\n");
        let packed = pretty_blocks(&m, Some(2), Some(4));
        assert_eq!(packed, "10 | 00\n01 | 00\n-------\n00 | 10\n00 | 01\n");
    }

    proptest::proptest! {
        #[test]
        fn csv_roundtrip(k in 1usize..6, seed in proptest::collection::vec(-1000i64..1000, 36)) {
            let m = IntMatrix::from_fn(k, |i, j| seed[(i - 1) * 6 + (j - 1)]);
            proptest::prop_assert_eq!(from_csv(&to_csv(&m)).unwrap(), m);
        }
    }
}
