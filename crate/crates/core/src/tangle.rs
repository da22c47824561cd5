//! Braid-like tangle words, their trace closures, and boundary relations.
//!
//! Strands are numbered `1..=k` left to right. Reading top to bottom:
//!
//! * `s<i>`: the strand at position `i` passes under the one at `i + 1` and
//!   they swap, so boundary colors `(u, v)` become `(v, u * v)`.
//! * `S<i>`: the mirror crossing, the strand at `i + 1` passes under:
//!   `(u, v)` becomes `(v * u, u)`.
//! * `t<i>`: a singular crossing, `(u, v)` becomes `(R1(u, v), R2(u, v))`.

use std::fmt;

use crate::axioms::{Op, Singquandle};
use crate::diagram::{Crossing, SingularDiagram};
use crate::error::{Error, Result};
use crate::table::Color;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    Sigma(usize),
    SigmaInv(usize),
    Tau(usize),
}

impl Letter {
    pub fn index(self) -> usize {
        match self {
            Letter::Sigma(i) | Letter::SigmaInv(i) | Letter::Tau(i) => i,
        }
    }

    pub fn parse(tok: &str) -> Result<Letter> {
        let bad = || Error::InvalidWord(format!("bad letter `{tok}`"));
        let mut chars = tok.chars();
        let head = chars.next().ok_or_else(bad)?;
        let i: usize = chars.as_str().parse().map_err(|_| bad())?;
        match head {
            's' => Ok(Letter::Sigma(i)),
            'S' => Ok(Letter::SigmaInv(i)),
            't' => Ok(Letter::Tau(i)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::Sigma(i) => write!(f, "s{i}"),
            Letter::SigmaInv(i) => write!(f, "S{i}"),
            Letter::Tau(i) => write!(f, "t{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TangleWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl TangleWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::InvalidWord(format!(
                "need at least 2 strands, got {strands}"
            )));
        }
        if let Some(l) = letters
            .iter()
            .find(|l| l.index() == 0 || l.index() >= strands)
        {
            return Err(Error::InvalidWord(format!(
                "letter {l} out of range for {strands} strands"
            )));
        }
        Ok(TangleWord { strands, letters })
    }

    /// Whitespace-separated letters, e.g. `"t1 s1 s1"`.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(Letter::parse)
            .collect::<Result<Vec<_>>>()?;
        TangleWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Concatenation: `self` on top, then `other`.
    pub fn then(&self, other: &TangleWord) -> TangleWord {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        TangleWord {
            strands: self.strands,
            letters,
        }
    }

    /// Boundary colors at the bottom given colors at the top.
    pub fn push_through(&self, s: &Singquandle, top: &[Color]) -> Vec<Color> {
        let mut pos = top.to_vec();
        for l in &self.letters {
            let i = l.index() - 1;
            let (u, v) = (pos[i], pos[i + 1]);
            let (p, q) = match l {
                Letter::Sigma(_) => (v, s.apply(Op::Star, u, v)),
                Letter::SigmaInv(_) => (s.apply(Op::Star, v, u), u),
                Letter::Tau(_) => (s.apply(Op::R1, u, v), s.apply(Op::R2, u, v)),
            };
            pos[i] = p;
            pos[i + 1] = q;
        }
        pos
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self.letters.iter().map(Letter::to_string).collect();
        write!(f, "{}", words.join(" "))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// Trace closure of a tangle word as a semiarc diagram.
///
/// Every under-passage and every singular vertex starts a new semiarc; the
/// bottom endpoints are then glued to the top endpoints. Semiarcs are
/// numbered by first appearance. Closed strands that meet no crossing become
/// `free` components.
pub fn braid_closure(w: &TangleWord) -> SingularDiagram {
    let k = w.strands;
    let mut pos: Vec<usize> = (0..k).collect();
    let mut next = k;
    let mut raw = Vec::with_capacity(w.letters.len());
    for l in &w.letters {
        let i = l.index() - 1;
        let (u, v) = (pos[i], pos[i + 1]);
        match l {
            Letter::Sigma(_) => {
                raw.push(Crossing::Classical([u, v, next]));
                pos[i] = v;
                pos[i + 1] = next;
                next += 1;
            }
            Letter::SigmaInv(_) => {
                raw.push(Crossing::Classical([v, u, next]));
                pos[i] = next;
                pos[i + 1] = u;
                next += 1;
            }
            Letter::Tau(_) => {
                raw.push(Crossing::Singular([u, v, next, next + 1]));
                pos[i] = next;
                pos[i + 1] = next + 1;
                next += 2;
            }
        }
    }
    let mut uf = UnionFind((0..next).collect());
    for (start, &end) in pos.iter().enumerate() {
        uf.union(start, end);
    }
    let mut compact = vec![usize::MAX; next];
    let mut arcs = 0;
    let mut crossings = Vec::with_capacity(raw.len());
    for c in &raw {
        let mut relabel = |a: usize| {
            let r = uf.find(a);
            if compact[r] == usize::MAX {
                compact[r] = arcs;
                arcs += 1;
            }
            compact[r]
        };
        crossings.push(match *c {
            Crossing::Classical(a) => Crossing::Classical(a.map(&mut relabel)),
            Crossing::Singular(a) => Crossing::Singular(a.map(&mut relabel)),
        });
    }
    let free = (0..next)
        .filter(|&a| uf.find(a) == a && compact[a] == usize::MAX)
        .count();
    SingularDiagram::new(arcs, free, crossings).expect("labels are compact")
}

/// The boundary behaviour of a tangle under a fixed structure: for each top
/// coloring (mixed radix, leftmost strand most significant) the unique bottom
/// coloring it forces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangleRelation {
    order: usize,
    strands: usize,
    bottoms: Vec<Vec<Color>>,
}

impl TangleRelation {
    pub fn identity(order: usize, strands: usize) -> Self {
        let bottoms = (0..order.pow(strands as u32))
            .map(|i| decode(i, order, strands))
            .collect();
        TangleRelation {
            order,
            strands,
            bottoms,
        }
    }

    pub fn len(&self) -> usize {
        self.bottoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bottoms.is_empty()
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn bottom(&self, top: &[Color]) -> &[Color] {
        &self.bottoms[encode(top, self.order)]
    }

    /// All `(top, bottom)` pairs in top order.
    pub fn pairs(&self) -> impl Iterator<Item = (Vec<Color>, &[Color])> + '_ {
        self.bottoms
            .iter()
            .enumerate()
            .map(|(i, b)| (decode(i, self.order, self.strands), b.as_slice()))
    }

    /// Relational composition: `self` on top of `other`.
    pub fn compose(&self, other: &TangleRelation) -> TangleRelation {
        assert_eq!((self.order, self.strands), (other.order, other.strands));
        let bottoms = self
            .bottoms
            .iter()
            .map(|mid| other.bottom(mid).to_vec())
            .collect();
        TangleRelation {
            order: self.order,
            strands: self.strands,
            bottoms,
        }
    }
}

fn decode(mut i: usize, order: usize, strands: usize) -> Vec<Color> {
    let mut v = vec![0; strands];
    for slot in v.iter_mut().rev() {
        *slot = i % order;
        i /= order;
    }
    v
}

fn encode(v: &[Color], order: usize) -> usize {
    v.iter().fold(0, |acc, &c| acc * order + c)
}

pub fn tangle_relation(w: &TangleWord, s: &Singquandle) -> TangleRelation {
    let n = s.order();
    let k = w.strands;
    let bottoms = (0..n.pow(k as u32))
        .map(|i| w.push_through(s, &decode(i, n, k)))
        .collect();
    TangleRelation {
        order: n,
        strands: k,
        bottoms,
    }
}

/// A named pair of tangle words that a Reidemeister-type move declares equal.
#[derive(Clone, Debug)]
pub struct MovePair {
    pub name: &'static str,
    pub left: TangleWord,
    pub right: TangleWord,
}

/// The classical and singular moves as word equalities.
pub fn move_pairs() -> Vec<MovePair> {
    let w = |k: usize, text: &str| TangleWord::parse(k, text).expect("static word");
    vec![
        MovePair {
            name: "RII",
            left: w(2, "s1 S1"),
            right: w(2, ""),
        },
        MovePair {
            name: "RII'",
            left: w(2, "S1 s1"),
            right: w(2, ""),
        },
        MovePair {
            name: "RIII",
            left: w(3, "s1 s2 s1"),
            right: w(3, "s2 s1 s2"),
        },
        MovePair {
            name: "RIII'",
            left: w(3, "S1 S2 S1"),
            right: w(3, "S2 S1 S2"),
        },
        MovePair {
            name: "RIVa",
            left: w(3, "S1 t2 s1"),
            right: w(3, "s2 t1 S2"),
        },
        MovePair {
            name: "RIVb",
            left: w(3, "s1 t2 S1"),
            right: w(3, "S2 t1 s2"),
        },
        MovePair {
            name: "RV",
            left: w(2, "S1 t1 s1"),
            right: w(2, "t1"),
        },
        MovePair {
            name: "RV'",
            left: w(2, "s1 t1 S1"),
            right: w(2, "t1"),
        },
    ]
}
