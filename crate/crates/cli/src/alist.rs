//! The alist sparse-matrix format.
//!
//! Columns (bits) come before rows (checks):
//!
//! ```text
//! n m
//! max_col_degree max_row_degree
//! <n column degrees>
//! <m row degrees>
//! <n lines: 1-based checks of each bit>
//! <m lines: 1-based bits of each check>
//! ```
//!
//! Neighbor lists may be zero-padded to the maximum degree or left short.

use tanner_zx::{BinaryMatrix, ClassicalCode};

use crate::error::CliError;

fn parse_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Parse { line, message: message.into() }
}

/// Line-numbered tokenizer; blank lines are significant for zero-degree lists.
struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Self { inner: text.lines().enumerate(), last: 0 }
    }

    /// Next line as numbers, with its 1-based line number. With `blank_ok`
    /// a missing line reads as empty, so trimmed trailing blank lines parse.
    fn numbers(&mut self, what: &str, blank_ok: bool) -> Result<(usize, Vec<usize>), CliError> {
        let Some((idx, line)) = self.inner.next() else {
            if blank_ok {
                return Ok((self.last + 1, Vec::new()));
            }
            return Err(parse_err(self.last + 1, format!("file ends before {what}")));
        };
        self.last = idx + 1;
        let values = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| parse_err(idx + 1, format!("`{tok}` is not a non-negative integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((idx + 1, values))
    }

    fn exactly(&mut self, count: usize, what: &str) -> Result<(usize, Vec<usize>), CliError> {
        let (line, values) = self.numbers(what, count == 0)?;
        if values.len() != count {
            return Err(parse_err(line, format!("{what}: expected {count} values, found {}", values.len())));
        }
        Ok((line, values))
    }
}

/// One neighbor list: nonzero entries first, then optional zero padding.
fn neighbor_list(
    line: usize,
    values: &[usize],
    degree: usize,
    max_degree: usize,
    bound: usize,
    what: &str,
) -> Result<Vec<usize>, CliError> {
    if values.len() > max_degree.max(degree) {
        return Err(parse_err(line, format!("{what} lists {} entries, above the maximum degree {max_degree}", values.len())));
    }
    let (entries, padding) = values.split_at(values.iter().position(|&v| v == 0).unwrap_or(values.len()));
    if padding.iter().any(|&v| v != 0) {
        return Err(parse_err(line, format!("{what} has a nonzero entry after zero padding")));
    }
    if entries.len() != degree {
        return Err(parse_err(line, format!("{what} has {} entries but degree {degree}", entries.len())));
    }
    let mut out = Vec::with_capacity(degree);
    for &v in entries {
        if v > bound {
            return Err(parse_err(line, format!("{what} references {v}, beyond {bound}")));
        }
        if out.contains(&(v - 1)) {
            return Err(parse_err(line, format!("{what} repeats {v}")));
        }
        out.push(v - 1);
    }
    Ok(out)
}

pub fn parse_alist(text: &str) -> Result<ClassicalCode, CliError> {
    let mut lines = Lines::new(text);
    let (_, dims) = lines.exactly(2, "the header `n m`")?;
    let (n, m) = (dims[0], dims[1]);
    let (_, maxes) = lines.exactly(2, "the maximum degrees")?;
    let (max_col, max_row) = (maxes[0], maxes[1]);
    let (col_line, col_deg) = lines.exactly(n, "the column degrees")?;
    let (row_line, row_deg) = lines.exactly(m, "the row degrees")?;
    if let Some(d) = col_deg.iter().find(|&&d| d > max_col) {
        return Err(parse_err(col_line, format!("column degree {d} exceeds the maximum {max_col}")));
    }
    if let Some(d) = row_deg.iter().find(|&&d| d > max_row) {
        return Err(parse_err(row_line, format!("row degree {d} exceeds the maximum {max_row}")));
    }

    let mut by_column = BinaryMatrix::zeros(m, n);
    for (i, &deg) in col_deg.iter().enumerate() {
        let (line, values) = lines.numbers(&format!("the checks of bit {}", i + 1), deg == 0)?;
        for a in neighbor_list(line, &values, deg, max_col, m, &format!("bit {}", i + 1))? {
            by_column.set(a, i, true);
        }
    }
    let mut by_row = BinaryMatrix::zeros(m, n);
    let mut row_lines = Vec::with_capacity(m);
    for (a, &deg) in row_deg.iter().enumerate() {
        let (line, values) = lines.numbers(&format!("the bits of check {}", a + 1), deg == 0)?;
        for i in neighbor_list(line, &values, deg, max_row, n, &format!("check {}", a + 1))? {
            by_row.set(a, i, true);
        }
        row_lines.push(line);
    }
    if let Some(a) = (0..m).find(|&a| by_row.row(a) != by_column.row(a)) {
        return Err(parse_err(
            row_lines[a],
            format!("check {} disagrees with the column lists", a + 1),
        ));
    }
    for (idx, line) in lines.inner {
        if !line.trim().is_empty() {
            return Err(parse_err(idx + 1, "unexpected content after the row lists"));
        }
    }
    Ok(ClassicalCode::from_matrix(by_row))
}

fn join(values: impl Iterator<Item = usize>) -> String {
    values.map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Canonical text: single spaces, ascending lists zero-padded to the maximum degree.
pub fn emit_alist(code: &ClassicalCode) -> String {
    let h = code.parity_check();
    let (m, n) = h.shape();
    let cols: Vec<Vec<usize>> = (0..n).map(|i| h.col_support(i)).collect();
    let rows: Vec<Vec<usize>> = (0..m).map(|a| h.row_support(a)).collect();
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    let padded = |list: &[usize], width: usize| {
        join(list.iter().map(|v| v + 1).chain(std::iter::repeat(0)).take(width))
    };

    let mut out = vec![
        format!("{n} {m}"),
        format!("{max_col} {max_row}"),
        join(cols.iter().map(Vec::len)),
        join(rows.iter().map(Vec::len)),
    ];
    out.extend(cols.iter().map(|c| padded(c, max_col)));
    out.extend(rows.iter().map(|r| padded(r, max_row)));
    let mut text = out.join("\n");
    text.push('\n');
    text
}

/// Dense fallback: one row of `0`/`1` per check, spaces optional, blank lines ignored.
pub fn parse_dense(text: &str) -> Result<ClassicalCode, CliError> {
    let mut rows: Vec<Vec<bool>> = Vec::new();
    let mut width = None;
    for (idx, line) in text.lines().enumerate() {
        let digits: String = line.chars().filter(|c| !c.is_whitespace()).collect();
        if digits.is_empty() {
            continue;
        }
        let row = digits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(parse_err(idx + 1, format!("`{other}` is not a bit"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if *width.get_or_insert(row.len()) != row.len() {
            return Err(parse_err(idx + 1, format!("row has {} entries, expected {}", row.len(), width.unwrap())));
        }
        rows.push(row);
    }
    let Some(width) = width else {
        return Err(parse_err(1, "no rows"));
    };
    Ok(ClassicalCode::from_matrix(BinaryMatrix::from_bit_rows(&rows, width)))
}

/// Collapses runs of whitespace inside lines and trims trailing blank lines.
pub fn canonical_whitespace(text: &str) -> String {
    let lines: Vec<String> = text
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect();
    let end = lines.iter().rposition(|l| !l.is_empty()).map_or(0, |p| p + 1);
    let mut out = lines[..end].join("\n");
    out.push('\n');
    out
}
