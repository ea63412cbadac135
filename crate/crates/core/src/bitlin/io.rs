//! Text formats: MacKay's alist sparse format and a dense 0/1 format.

use std::io::{self, Write};

use super::BitMatrix;
use crate::error::{Error, Result};

/// Write `m` in alist format. Index lists are 1-based and never zero-padded.
pub fn write_alist<W: Write>(m: &BitMatrix, out: &mut W) -> io::Result<()> {
    let cols = m.column_supports();
    let rows = m.row_supports();
    writeln!(out, "{} {}", m.cols(), m.rows())?;
    let max_c = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_r = rows.iter().map(Vec::len).max().unwrap_or(0);
    writeln!(out, "{max_c} {max_r}")?;
    writeln!(out, "{}", join(cols.iter().map(Vec::len)))?;
    writeln!(out, "{}", join(rows.iter().map(Vec::len)))?;
    for c in &cols {
        writeln!(out, "{}", join(c.iter().map(|i| i + 1)))?;
    }
    for r in &rows {
        writeln!(out, "{}", join(r.iter().map(|i| i + 1)))?;
    }
    Ok(())
}

fn join<I: Iterator<Item = usize>>(it: I) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_line(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|e| Error::Parse {
                line: lineno,
                msg: format!("{t:?}: {e}"),
            })
        })
        .collect()
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Read an alist matrix. Zero entries in the index lists are treated as padding.
/// The column lists and row lists must describe the same matrix.
pub fn read_alist(text: &str) -> Result<BitMatrix> {
    let lines: Vec<&str> = text.lines().collect();
    let get = |i: usize| -> Result<Vec<usize>> {
        let l = lines.get(i).ok_or_else(|| parse_err(i + 1, "unexpected end of file"))?;
        parse_line(l, i + 1)
    };
    let dims = get(0)?;
    let [n, m] = dims[..] else {
        return Err(parse_err(1, "expected \"n m\""));
    };
    let maxes = get(1)?;
    if maxes.len() != 2 {
        return Err(parse_err(2, "expected two maximum weights"));
    }
    let col_w = get(2)?;
    let row_w = get(3)?;
    if col_w.len() != n && n > 0 {
        return Err(parse_err(3, format!("expected {n} column weights")));
    }
    if row_w.len() != m && m > 0 {
        return Err(parse_err(4, format!("expected {m} row weights")));
    }
    let mut from_cols = BitMatrix::zeros(m, n);
    for c in 0..n {
        let idx: Vec<usize> = get(4 + c)?.into_iter().filter(|&i| i != 0).collect();
        if idx.len() != col_w[c] {
            return Err(parse_err(5 + c, format!("column {} weight mismatch", c + 1)));
        }
        for i in idx {
            if i > m {
                return Err(parse_err(5 + c, format!("row index {i} > {m}")));
            }
            from_cols.set(i - 1, c, true);
        }
    }
    let mut from_rows = BitMatrix::zeros(m, n);
    for r in 0..m {
        let line = 4 + n + r;
        let idx: Vec<usize> = get(line)?.into_iter().filter(|&i| i != 0).collect();
        if idx.len() != row_w[r] {
            return Err(parse_err(line + 1, format!("row {} weight mismatch", r + 1)));
        }
        for j in idx {
            if j > n {
                return Err(parse_err(line + 1, format!("column index {j} > {n}")));
            }
            from_rows.set(r, j - 1, true);
        }
    }
    if from_cols != from_rows {
        return Err(parse_err(0, "column lists and row lists disagree"));
    }
    Ok(from_cols)
}

/// Write `m` as `"rows cols"` followed by one 0/1 string per row.
pub fn write_dense<W: Write>(m: &BitMatrix, out: &mut W) -> io::Result<()> {
    writeln!(out, "{} {}", m.rows(), m.cols())?;
    for r in 0..m.rows() {
        let s: String = (0..m.cols())
            .map(|c| if m.get(r, c) { '1' } else { '0' })
            .collect();
        writeln!(out, "{s}")?;
    }
    Ok(())
}

pub fn read_dense(text: &str) -> Result<BitMatrix> {
    let mut lines = text.lines();
    let header = parse_line(lines.next().unwrap_or(""), 1)?;
    let [rows, cols] = header[..] else {
        return Err(parse_err(1, "expected \"rows cols\""));
    };
    let mut m = BitMatrix::zeros(rows, cols);
    for r in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| parse_err(r + 2, "unexpected end of file"))?
            .trim();
        if line.len() != cols {
            return Err(parse_err(r + 2, format!("expected {cols} symbols")));
        }
        for (c, ch) in line.bytes().enumerate() {
            match ch {
                b'0' => {}
                b'1' => m.set(r, c, true),
                other => {
                    return Err(parse_err(r + 2, format!("bad symbol {:?}", other as char)))
                }
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alist_string(m: &BitMatrix) -> String {
        let mut buf = Vec::new();
        write_alist(m, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn alist_layout() {
        let m = BitMatrix::parse_rows("110 011");
        let s = alist_string(&m);
        assert_eq!(s, "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 2\n2 3\n");
        assert_eq!(read_alist(&s).unwrap(), m);
    }

    #[test]
    fn alist_zero_padding_accepted() {
        let padded = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n";
        assert_eq!(read_alist(padded).unwrap(), BitMatrix::parse_rows("110 011"));
    }

    #[test]
    fn alist_inconsistent_rejected() {
        let bad = "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 3\n2 3\n";
        assert!(read_alist(bad).is_err());
    }

    #[test]
    fn alist_empty_column() {
        let m = BitMatrix::parse_rows("100 100");
        let s = alist_string(&m);
        assert_eq!(read_alist(&s).unwrap(), m);
    }

    #[test]
    fn dense_roundtrip() {
        let m = BitMatrix::parse_rows("1010 0111 0000");
        let mut buf = Vec::new();
        write_dense(&m, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "3 4\n1010\n0111\n0000\n");
        assert_eq!(read_dense(&s).unwrap(), m);
        assert!(read_dense("1 2\n1x\n").is_err());
    }
}
