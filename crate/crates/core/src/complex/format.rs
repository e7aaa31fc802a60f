//! Line-based text format for complexes and chains.
//!
//! ```text
//! pcomplex 2
//! cells 0 3
//! cells 1 3
//! cells 2 2
//! boundary 1 0 : +1 -0
//! ```
//!
//! Face indices carry a mandatory sign glyph. `#` starts a comment.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use super::{Chain, Incidence, PolyComplex};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_usize(line: usize, tok: Option<&str>, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{tok}`")))
}

pub fn parse_complex(text: &str) -> Result<PolyComplex> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "empty complex file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("pcomplex") {
        return Err(syntax(hline, "expected `pcomplex <n>` header"));
    }
    let dim = parse_usize(hline, toks.next(), "dimension")?;
    if toks.next().is_some() {
        return Err(syntax(hline, "trailing tokens after dimension"));
    }
    if dim < 2 {
        return Err(Error::DimensionTooSmall(dim));
    }

    let mut counts: Vec<Option<usize>> = vec![None; dim + 1];
    // (k, cell) -> (line, faces)
    let mut entries: BTreeMap<(usize, usize), (usize, Vec<Incidence>)> = BTreeMap::new();

    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("cells") => {
                let k = parse_usize(ln, toks.next(), "degree")?;
                let c = parse_usize(ln, toks.next(), "cell count")?;
                if toks.next().is_some() {
                    return Err(syntax(ln, "trailing tokens after cell count"));
                }
                if k > dim {
                    return Err(syntax(ln, format!("degree {k} exceeds dimension {dim}")));
                }
                if counts[k].replace(c).is_some() {
                    return Err(syntax(ln, format!("cells {k} declared twice")));
                }
            }
            Some("boundary") => {
                let k = parse_usize(ln, toks.next(), "degree")?;
                let cell = parse_usize(ln, toks.next(), "cell index")?;
                if toks.next() != Some(":") {
                    return Err(syntax(ln, "expected `:` after cell index"));
                }
                if k == 0 || k > dim {
                    return Err(syntax(ln, format!("boundary degree {k} outside 1..={dim}")));
                }
                let mut faces = Vec::new();
                let mut seen = HashSet::new();
                for tok in toks {
                    let (sign, rest) = match tok.as_bytes().first() {
                        Some(b'+') => (1i8, &tok[1..]),
                        Some(b'-') => (-1i8, &tok[1..]),
                        _ => return Err(syntax(ln, format!("face `{tok}` lacks a sign glyph"))),
                    };
                    let face: usize = rest
                        .parse()
                        .map_err(|_| syntax(ln, format!("invalid face `{tok}`")))?;
                    if !seen.insert(face) {
                        return Err(Error::DuplicateFace {
                            line: ln,
                            k,
                            cell,
                            face,
                        });
                    }
                    faces.push((face, sign));
                }
                if entries.insert((k, cell), (ln, faces)).is_some() {
                    return Err(syntax(
                        ln,
                        format!("boundary of {k}-cell {cell} given twice"),
                    ));
                }
            }
            Some(other) => return Err(syntax(ln, format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }

    let counts: Vec<usize> = counts
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let last = text.lines().count().max(1);
            c.ok_or_else(|| {
                syntax(
                    last,
                    format!("end of file without a `cells {k}` declaration"),
                )
            })
        })
        .collect::<Result<_>>()?;
    let mut boundaries: Vec<Vec<Vec<Incidence>>> =
        counts.iter().map(|&c| vec![Vec::new(); c]).collect();
    for ((k, cell), (ln, faces)) in entries {
        if cell >= counts[k] {
            return Err(syntax(
                ln,
                format!("{k}-cell {cell} out of range (count {})", counts[k]),
            ));
        }
        if let Some(&(face, _)) = faces.iter().find(|(f, _)| *f >= counts[k - 1]) {
            return Err(Error::DanglingFace {
                line: ln,
                k,
                cell,
                face,
            });
        }
        boundaries[k][cell] = faces;
    }
    PolyComplex::new(dim, counts, boundaries)
}

pub fn emit_complex(x: &PolyComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pcomplex {}", x.dim());
    for (k, c) in x.counts().iter().enumerate() {
        let _ = writeln!(out, "cells {k} {c}");
    }
    for k in 1..=x.dim() {
        for cell in 0..x.count(k) {
            let faces = x.boundary(k, cell);
            if faces.is_empty() {
                continue;
            }
            let _ = write!(out, "boundary {k} {cell} :");
            for &(f, s) in faces {
                let _ = write!(out, " {}{f}", if s > 0 { '+' } else { '-' });
            }
            out.push('\n');
        }
    }
    out
}

/// Canonical text of a complex file.
pub fn normalize(text: &str) -> Result<String> {
    parse_complex(text).map(|x| emit_complex(&x))
}

pub fn parse_chain(text: &str) -> Result<Chain> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, "empty chain file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("chain") {
        return Err(syntax(hline, "expected `chain <k>` header"));
    }
    let degree = parse_usize(hline, toks.next(), "degree")?;
    let mut chain = Chain::zero(degree);
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        let (Some(value), Some(cell), None) = (toks.next(), toks.next(), toks.next()) else {
            return Err(syntax(ln, "expected `<rational> <cell-index>`"));
        };
        let value = parse_rational(value).map_err(|e| syntax(ln, e.to_string()))?;
        let cell: usize = cell
            .parse()
            .map_err(|_| syntax(ln, format!("invalid cell `{cell}`")))?;
        chain.add_term(cell, &value);
    }
    Ok(chain)
}

pub fn emit_chain(chain: &Chain) -> String {
    let mut out = format!("chain {}\n", chain.degree());
    for (i, v) in chain.iter() {
        let _ = writeln!(out, "{} {i}", format_rational(v));
    }
    out
}
