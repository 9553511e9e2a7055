//! Parity-check matrix files.
//!
//! Plain format: first line `N K`, then `Q = N - K` lines of `N`
//! whitespace-separated bits, row-major. Row 0 of the file is row 0 of `H`.
//! Blank lines and lines starting with `#` are ignored.
//!
//! The alist format (MacKay) is also read, using its column lists.

use std::fmt::Write as _;
use std::path::Path;

use super::{BinaryWord, ParityCheckMatrix, Syndrome, MAX_REDUNDANCY};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Plain,
    Alist,
}

impl MatrixFormat {
    /// `.alist` files are alist, everything else is plain.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("alist") => MatrixFormat::Alist,
            _ => MatrixFormat::Plain,
        }
    }
}

pub fn load_parity_check(path: &Path, format: MatrixFormat) -> Result<ParityCheckMatrix> {
    let text = std::fs::read_to_string(path)?;
    match format {
        MatrixFormat::Plain => parse_plain(&text),
        MatrixFormat::Alist => parse_alist(&text),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("expected a non-negative integer, found {tok:?}"),
    })
}

pub fn parse_plain(text: &str) -> Result<ParityCheckMatrix> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "missing \"N K\" header".into(),
    })?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| parse_usize(t, hline))
        .collect::<Result<_>>()?;
    let [n, k] = dims[..] else {
        return Err(Error::Parse {
            line: hline,
            msg: "header must be \"N K\"".into(),
        });
    };
    if k == 0 || k >= n {
        return Err(Error::InvalidDimensions { n, k });
    }
    let q = n - k;
    if q > MAX_REDUNDANCY {
        return Err(Error::OutOfRange {
            name: "q",
            value: q,
            min: 1,
            max: MAX_REDUNDANCY,
        });
    }
    let mut rows = Vec::with_capacity(q);
    for (line, text) in lines {
        if rows.len() == q {
            return Err(Error::Parse {
                line,
                msg: format!("more than {q} rows"),
            });
        }
        let bits: Vec<u8> = text
            .split_whitespace()
            .map(|t| match t {
                "0" => Ok(0),
                "1" => Ok(1),
                _ => Err(Error::Parse {
                    line,
                    msg: format!("expected 0 or 1, found {t:?}"),
                }),
            })
            .collect::<Result<_>>()?;
        if bits.len() != n {
            return Err(Error::Parse {
                line,
                msg: format!("row has {} entries, expected {n}", bits.len()),
            });
        }
        rows.push(BinaryWord::from_bits(&bits));
    }
    if rows.len() != q {
        return Err(Error::Parse {
            line: 0,
            msg: format!("found {} rows, expected {q}", rows.len()),
        });
    }
    ParityCheckMatrix::from_rows(&rows, None)
}

pub fn parse_alist(text: &str) -> Result<ParityCheckMatrix> {
    let mut lines = content_lines(text);
    let mut next = |what: &str| {
        lines.next().ok_or_else(|| Error::Parse {
            line: 0,
            msg: format!("unexpected end of file reading {what}"),
        })
    };
    let ints =
        |line: usize, s: &str| -> Result<Vec<usize>> { s.split_whitespace().map(|t| parse_usize(t, line)).collect() };

    let (l, dims) = next("dimensions")?;
    let dims = ints(l, dims)?;
    let [n, q] = dims[..] else {
        return Err(Error::Parse {
            line: l,
            msg: "expected \"N M\"".into(),
        });
    };
    if q > MAX_REDUNDANCY {
        return Err(Error::OutOfRange {
            name: "q",
            value: q,
            min: 1,
            max: MAX_REDUNDANCY,
        });
    }
    next("maximum weights")?;
    next("column weights")?;
    next("row weights")?;
    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        let (l, text) = next("column lists")?;
        let mut c = 0u64;
        for r in ints(l, text)? {
            // 0 pads short lists
            if r == 0 {
                continue;
            }
            if r > q {
                return Err(Error::Parse {
                    line: l,
                    msg: format!("column {i} references row {r} > {q}"),
                });
            }
            c ^= 1 << (r - 1);
        }
        columns.push(Syndrome(c));
    }
    ParityCheckMatrix::from_columns(q, columns, None)
}

/// Serialises `h` in the plain format.
pub fn write_plain(h: &ParityCheckMatrix) -> String {
    let mut out = format!("{} {}\n", h.n(), h.k());
    for row in h.rows() {
        let bits: Vec<&str> = row.to_bits().iter().map(|&b| if b == 1 { "1" } else { "0" }).collect();
        let _ = writeln!(out, "{}", bits.join(" "));
    }
    out
}
