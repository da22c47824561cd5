//! Operation-table files.
//!
//! ```text
//! n 3
//! star
//! 0 2 1
//! 2 1 0
//! 1 0 2
//! r1
//! ...
//! r2
//! ...
//! ```
//!
//! `#` starts a comment. A file with only a `star` block is a bare quandle.

use crate::axioms::Singquandle;
use crate::error::{Error, Result};
use crate::table::OpTable;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableFile {
    Quandle(OpTable),
    Singquandle(Singquandle),
}

impl TableFile {
    pub fn star(&self) -> &OpTable {
        match self {
            TableFile::Quandle(t) => t,
            TableFile::Singquandle(s) => s.star(),
        }
    }
}

/// Parses a table file. With `one_indexed`, entries are read as `1..=n`.
pub fn parse_tables(text: &str, one_indexed: bool) -> Result<TableFile> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| {
            (
                i + 1,
                l.split('#')
                    .next()
                    .unwrap_or("")
                    .split_whitespace()
                    .collect(),
            )
        })
        .filter(|(_, toks): &(usize, Vec<&str>)| !toks.is_empty())
        .collect();
    let end = text.lines().count().max(1);
    let mut it = lines.into_iter().peekable();

    let order = match it.next() {
        Some((line, toks)) => match toks.as_slice() {
            ["n", v] => v
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::parse(line, format!("invalid order `{v}`")))?,
            _ => return Err(Error::parse(line, "expected `n <order>`")),
        },
        None => return Err(Error::parse(end, "empty table file")),
    };

    let mut blocks: [Option<OpTable>; 3] = [None, None, None];
    while let Some((line, toks)) = it.next() {
        let slot = match toks.as_slice() {
            ["star"] => 0,
            ["r1"] => 1,
            ["r2"] => 2,
            _ => {
                return Err(Error::parse(
                    line,
                    format!("expected a block header, found `{}`", toks.join(" ")),
                ))
            }
        };
        if blocks[slot].is_some() {
            return Err(Error::parse(line, format!("duplicate `{}` block", toks[0])));
        }
        let mut rows = Vec::with_capacity(order);
        for r in 0..order {
            let Some((row_line, row)) =
                it.next_if(|(_, t)| !matches!(t.as_slice(), ["star"] | ["r1"] | ["r2"]))
            else {
                return Err(Error::parse(
                    end,
                    format!("`{}` block has {r} rows, expected {order}", toks[0]),
                ));
            };
            if row.len() != order {
                return Err(Error::parse(
                    row_line,
                    format!("expected {order} entries, found {}", row.len()),
                ));
            }
            let parsed = row
                .iter()
                .map(|tok| {
                    let v: usize = tok
                        .parse()
                        .map_err(|_| Error::parse(row_line, format!("invalid entry `{tok}`")))?;
                    let v = if one_indexed {
                        v.checked_sub(1)
                            .ok_or_else(|| Error::parse(row_line, "entry 0 in one-indexed table"))?
                    } else {
                        v
                    };
                    if v >= order {
                        return Err(Error::parse(
                            row_line,
                            format!("entry `{tok}` out of range"),
                        ));
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(parsed);
        }
        blocks[slot] = Some(OpTable::from_rows(rows)?);
    }

    match blocks {
        [Some(star), None, None] => Ok(TableFile::Quandle(star)),
        [Some(star), Some(r1), Some(r2)] => {
            Ok(TableFile::Singquandle(Singquandle::new(star, r1, r2)?))
        }
        [None, ..] => Err(Error::parse(end, "missing `star` block")),
        _ => Err(Error::parse(
            end,
            "`r1` and `r2` blocks must appear together",
        )),
    }
}

fn push_block(out: &mut String, name: &str, t: &OpTable) {
    out.push_str(name);
    out.push('\n');
    out.push_str(&t.to_string());
}

/// Zero-indexed table file for a full structure.
pub fn serialize_tables(s: &Singquandle) -> String {
    let mut out = format!("n {}\n", s.order());
    push_block(&mut out, "star", s.star());
    push_block(&mut out, "r1", s.r1());
    push_block(&mut out, "r2", s.r2());
    out
}

pub fn serialize_quandle(t: &OpTable) -> String {
    let mut out = format!("n {}\n", t.order());
    push_block(&mut out, "star", t);
    out
}
