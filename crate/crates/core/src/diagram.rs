//! Singular link diagrams as semiarc constraint lists, and their text format.
//!
//! ```text
//! # comment
//! arcs 4
//! free 0
//! S 0 1 2 3
//! X 0 1 2
//! ```
//!
//! `X a b c` is a classical crossing with under-arcs `a`, `c` and over-arc `b`
//! (`c = a * b`). `S a b c d` is a singular crossing with inputs `a` (NW), `b`
//! (NE) and outputs `c` (SW), `d` (SE): `c = R1(a, b)`, `d = R2(a, b)`.
//! `free f` declares `f` extra split unknotted components.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Crossing {
    /// `[under-in, over, under-out]`
    Classical([usize; 3]),
    /// `[NW, NE, SW, SE]`
    Singular([usize; 4]),
}

impl Crossing {
    pub fn arcs(&self) -> &[usize] {
        match self {
            Crossing::Classical(a) => a,
            Crossing::Singular(a) => a,
        }
    }

    fn map_arcs(&self, f: impl Fn(usize) -> usize) -> Crossing {
        match *self {
            Crossing::Classical(a) => Crossing::Classical(a.map(f)),
            Crossing::Singular(a) => Crossing::Singular(a.map(f)),
        }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Crossing::Classical([a, b, c]) => write!(f, "X {a} {b} {c}"),
            Crossing::Singular([a, b, c, d]) => write!(f, "S {a} {b} {c} {d}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SingularDiagram {
    arcs: usize,
    free: usize,
    crossings: Vec<Crossing>,
}

impl SingularDiagram {
    pub fn new(arcs: usize, free: usize, crossings: Vec<Crossing>) -> Result<Self> {
        for (i, c) in crossings.iter().enumerate() {
            if let Some(&bad) = c.arcs().iter().find(|&&a| a >= arcs) {
                return Err(Error::ArcOutOfRange {
                    crossing: i,
                    label: bad,
                    arcs,
                });
            }
        }
        Ok(SingularDiagram {
            arcs,
            free,
            crossings,
        })
    }

    pub fn arcs(&self) -> usize {
        self.arcs
    }

    pub fn free(&self) -> usize {
        self.free
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn singular_count(&self) -> usize {
        self.crossings
            .iter()
            .filter(|c| matches!(c, Crossing::Singular(_)))
            .count()
    }

    /// Quarter-turn reading of the singular crossing at `index`:
    /// `S(a, b, c, d) -> S(b, d, a, c)`.
    pub fn rotate_singular(&self, index: usize) -> Result<SingularDiagram> {
        let mut out = self.clone();
        match out.crossings.get_mut(index) {
            None => Err(Error::CrossingOutOfRange(index)),
            Some(Crossing::Classical(_)) => Err(Error::NotSingular(index)),
            Some(Crossing::Singular(arcs)) => {
                let [a, b, c, d] = *arcs;
                *arcs = [b, d, a, c];
                Ok(out)
            }
        }
    }

    /// Renames arc `a` to `perm[a]`; `perm` must be a permutation of `0..arcs`.
    pub fn relabel_arcs(&self, perm: &[usize]) -> SingularDiagram {
        assert_eq!(perm.len(), self.arcs);
        SingularDiagram {
            arcs: self.arcs,
            free: self.free,
            crossings: self
                .crossings
                .iter()
                .map(|c| c.map_arcs(|a| perm[a]))
                .collect(),
        }
    }

    /// Same diagram with crossings listed in a different order.
    pub fn reorder_crossings(&self, order: &[usize]) -> SingularDiagram {
        SingularDiagram {
            arcs: self.arcs,
            free: self.free,
            crossings: order.iter().map(|&i| self.crossings[i]).collect(),
        }
    }

    /// Disjoint union; arcs of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &SingularDiagram) -> SingularDiagram {
        let shift = self.arcs;
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| c.map_arcs(|a| a + shift)));
        SingularDiagram {
            arcs: self.arcs + other.arcs,
            free: self.free + other.free,
            crossings,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_diagram(text)
    }

    pub fn serialize(&self) -> String {
        serialize_diagram(self)
    }
}

impl fmt::Display for SingularDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_diagram(self))
    }
}

fn parse_label(tok: &str, arcs: usize, line: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| Error::parse(line, format!("expected an arc label, found `{tok}`")))?;
    if v >= arcs {
        return Err(Error::parse(
            line,
            format!("arc label {v} out of range for {arcs} arcs"),
        ));
    }
    Ok(v)
}

pub fn parse_diagram(text: &str) -> Result<SingularDiagram> {
    let mut arcs: Option<usize> = None;
    let mut free: Option<usize> = None;
    let mut crossings = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = toks.split_first() else {
            continue;
        };
        match head {
            "arcs" | "free" => {
                let [value] = rest else {
                    return Err(Error::parse(
                        line,
                        format!("`{head}` takes exactly one count"),
                    ));
                };
                let value: usize = value
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid count `{value}`")))?;
                let slot = if head == "arcs" { &mut arcs } else { &mut free };
                if slot.is_some() {
                    return Err(Error::parse(line, format!("duplicate `{head}` header")));
                }
                *slot = Some(value);
            }
            "X" | "S" => {
                let m = arcs.ok_or_else(|| Error::parse(line, "crossing before `arcs` header"))?;
                let want = if head == "X" { 3 } else { 4 };
                if rest.len() != want {
                    let kind = if head == "X" { "Classical" } else { "Singular" };
                    return Err(Error::parse(
                        line,
                        format!(
                            "{kind} crossing requires {want} labels, found {}",
                            rest.len()
                        ),
                    ));
                }
                let labels = rest
                    .iter()
                    .map(|t| parse_label(t, m, line))
                    .collect::<Result<Vec<_>>>()?;
                crossings.push(if head == "X" {
                    Crossing::Classical([labels[0], labels[1], labels[2]])
                } else {
                    Crossing::Singular([labels[0], labels[1], labels[2], labels[3]])
                });
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    let end = text.lines().count().max(1);
    let arcs = arcs.ok_or_else(|| Error::parse(end, "missing `arcs` header"))?;
    Ok(SingularDiagram {
        arcs,
        free: free.unwrap_or(0),
        crossings,
    })
}

/// Canonical text: `arcs`, then `free` when nonzero, then one crossing per line.
pub fn serialize_diagram(d: &SingularDiagram) -> String {
    let mut out = format!("arcs {}\n", d.arcs);
    if d.free > 0 {
        out.push_str(&format!("free {}\n", d.free));
    }
    for c in &d.crossings {
        out.push_str(&c.to_string());
        out.push('\n');
    }
    out
}

/// Two singular crossings whose outputs feed each other's inputs in the same
/// positions. With `x = arc 0`, `y = arc 1` the coloring conditions are
/// `x = R1(R1(x,y), R2(x,y))` and `y = R2(R1(x,y), R2(x,y))`.
pub fn fig9_left() -> SingularDiagram {
    SingularDiagram {
        arcs: 4,
        free: 0,
        crossings: vec![
            Crossing::Singular([0, 1, 2, 3]),
            Crossing::Singular([2, 3, 0, 1]),
        ],
    }
}

/// The companion knot whose second crossing exchanges the two outputs; it
/// only admits constant colorings by the structures considered here.
pub fn fig9_right() -> SingularDiagram {
    SingularDiagram {
        arcs: 4,
        free: 0,
        crossings: vec![
            Crossing::Singular([0, 1, 2, 3]),
            Crossing::Singular([2, 3, 1, 0]),
        ],
    }
}

/// Single-crossing unknot (Reidemeister I kink).
pub fn kink() -> SingularDiagram {
    SingularDiagram {
        arcs: 1,
        free: 0,
        crossings: vec![Crossing::Classical([0, 0, 0])],
    }
}

/// Two-component unlink drawn with a Reidemeister II clasp.
pub fn rii_clasp() -> SingularDiagram {
    SingularDiagram {
        arcs: 3,
        free: 0,
        crossings: vec![
            Crossing::Classical([1, 0, 2]),
            Crossing::Classical([2, 0, 1]),
        ],
    }
}
