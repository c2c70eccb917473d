//! Matrix input: inline rows (`2 -1; -1 2`), newline-separated rows, or the
//! file format `n`, then `n` rows, then an optional `d: d_1 ... d_n` line.

use crate::cartan::{validate_gcm, CartanMatrix};
use crate::error::{Error, Result};

/// A parsed matrix with an optional symmetrizer override.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixInput {
    pub matrix: CartanMatrix,
    pub d: Option<Vec<i64>>,
}

fn parse_ints(text: &str, line: usize, col0: usize) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    let mut col = col0;
    let mut rest = text;
    while !rest.is_empty() {
        let skip = rest.len() - rest.trim_start_matches([' ', '\t', ',']).len();
        col += skip;
        rest = &rest[skip..];
        if rest.is_empty() {
            break;
        }
        let len = rest.find([' ', '\t', ',']).unwrap_or(rest.len());
        let tok = &rest[..len];
        let v = tok.parse::<i64>().map_err(|_| Error::Parse {
            line,
            column: col,
            message: format!("expected an integer, found `{tok}`"),
        })?;
        out.push(v);
        col += len;
        rest = &rest[len..];
    }
    Ok(out)
}

fn square(rows: Vec<(usize, usize, Vec<i64>)>) -> Result<Vec<Vec<i64>>> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty matrix".into(),
        });
    }
    for (line, col, r) in &rows {
        if r.len() != n {
            return Err(Error::Parse {
                line: *line,
                column: *col,
                message: format!("row has {} entries, expected {n}", r.len()),
            });
        }
    }
    Ok(rows.into_iter().map(|r| r.2).collect())
}

/// Parses and validates a generalized Cartan matrix.
pub fn parse_matrix(text: &str) -> Result<MatrixInput> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .collect();
    let mut d = None;
    let mut rows = Vec::new();
    if lines.len() == 1 {
        let (line, l) = lines[0];
        let mut col = 1;
        for seg in l.split(';') {
            if !seg.trim().is_empty() {
                let first = col + seg.len() - seg.trim_start().len();
                rows.push((line, first, parse_ints(seg, line, col)?));
            }
            col += seg.len() + 1;
        }
    } else {
        let mut body = &lines[..];
        if let Some(&(line, first)) = lines.first() {
            let head = parse_ints(first, line, 1)?;
            if head.len() == 1 && lines.len() > 1 {
                let n = head[0];
                if n <= 0 {
                    return Err(Error::Parse {
                        line,
                        column: 1,
                        message: "dimension must be positive".into(),
                    });
                }
                body = &lines[1..];
                let n = n as usize;
                if body.len() < n {
                    return Err(Error::Parse {
                        line: lines.last().map_or(line, |l| l.0),
                        column: 1,
                        message: format!("expected {n} rows, found {}", body.len()),
                    });
                }
            }
        }
        for &(line, l) in body {
            let t = l.trim_start();
            if let Some(rest) = t.strip_prefix("d:") {
                let col = l.len() - t.len() + 3;
                d = Some(parse_ints(rest, line, col)?);
                continue;
            }
            if d.is_some() {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: "rows after the `d:` line".into(),
                });
            }
            rows.push((line, l.len() - t.len() + 1, parse_ints(l, line, 1)?));
        }
    }
    let matrix = validate_gcm(square(rows)?)?;
    if let Some(d) = &d {
        if d.len() != matrix.n() {
            return Err(Error::Shape(format!("symmetrizer of length {} for rank {}", d.len(), matrix.n())));
        }
    }
    Ok(MatrixInput { matrix, d })
}

/// Parses `1,2` or `1 2` as a symmetrizer.
pub fn parse_symmetrizer(text: &str) -> Result<Vec<i64>> {
    parse_ints(text, 1, 1)
}
