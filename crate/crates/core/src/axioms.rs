//! Singquandle structures and the exhaustive axiom checker.
//!
//! Every identity is stored once as a pair of expression trees over the
//! variables `x, y, z`; the checker, the witness re-evaluation and the
//! enumeration search all read the same trees.

use std::fmt;

use crate::error::{Error, Result};
use crate::quandle;
use crate::table::{Color, OpTable};

/// A triple `(*, R1, R2)` of operation tables of equal order.
///
/// Construction only checks shapes; [`Singquandle::verify`] decides whether the
/// triple actually satisfies the axioms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Singquandle {
    star: OpTable,
    r1: OpTable,
    r2: OpTable,
}

impl Singquandle {
    pub fn new(star: OpTable, r1: OpTable, r2: OpTable) -> Result<Self> {
        let n = star.order();
        for t in [&r1, &r2] {
            if t.order() != n {
                return Err(Error::OrderMismatch(n, t.order()));
            }
        }
        Ok(Singquandle { star, r1, r2 })
    }

    pub fn order(&self) -> usize {
        self.star.order()
    }

    pub fn star(&self) -> &OpTable {
        &self.star
    }

    pub fn r1(&self) -> &OpTable {
        &self.r1
    }

    pub fn r2(&self) -> &OpTable {
        &self.r2
    }

    #[inline]
    pub fn apply(&self, op: Op, a: Color, b: Color) -> Color {
        match op {
            Op::Star => self.star.get(a, b),
            Op::R1 => self.r1.get(a, b),
            Op::R2 => self.r2.get(a, b),
        }
    }

    /// Simultaneous relabeling of all three tables.
    pub fn relabel(&self, perm: &[Color]) -> Singquandle {
        Singquandle {
            star: self.star.relabel(perm),
            r1: self.r1.relabel(perm),
            r2: self.r2.relabel(perm),
        }
    }

    /// The full predicate: involutive quandle plus every singquandle identity.
    pub fn verify(&self) -> AxiomReport {
        AxiomReport::run(self, Axiom::ALL)
    }

    pub fn is_verified(&self) -> bool {
        Axiom::ALL.iter().all(|a| a.first_failure(self).is_none())
    }
}

impl fmt::Debug for Singquandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Singquandle")
            .field("star", &self.star)
            .field("r1", &self.r1)
            .field("r2", &self.r2)
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Star,
    R1,
    R2,
}

/// Expression over the variables of an axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Apply(Op, Box<Expr>, Box<Expr>),
}

impl Expr {
    /// Evaluates with a partial lookup; `None` as soon as any lookup is unknown.
    pub fn eval_with<F>(&self, vars: &[Color], lookup: &mut F) -> Option<Color>
    where
        F: FnMut(Op, Color, Color) -> Option<Color>,
    {
        match self {
            Expr::Var(i) => Some(vars[*i]),
            Expr::Apply(op, a, b) => {
                let a = a.eval_with(vars, lookup)?;
                let b = b.eval_with(vars, lookup)?;
                lookup(*op, a, b)
            }
        }
    }

    pub fn eval(&self, s: &Singquandle, vars: &[Color]) -> Color {
        match self {
            Expr::Var(i) => vars[*i],
            Expr::Apply(op, a, b) => s.apply(*op, a.eval(s, vars), b.eval(s, vars)),
        }
    }
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;

fn v(i: usize) -> Expr {
    Expr::Var(i)
}

fn ap(op: Op, a: Expr, b: Expr) -> Expr {
    Expr::Apply(op, Box::new(a), Box::new(b))
}

fn st(a: Expr, b: Expr) -> Expr {
    ap(Op::Star, a, b)
}

fn r1(a: Expr, b: Expr) -> Expr {
    ap(Op::R1, a, b)
}

fn r2(a: Expr, b: Expr) -> Expr {
    ap(Op::R2, a, b)
}

/// One named identity (or structural property) of a singquandle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Right multiplications are bijective. Witness `(y, x1, x2)` with `x1 != x2`
    /// and `x1 * y = x2 * y`.
    RightBijective,
    SelfDistributive,
    Idempotent,
    Involutive,
    /// `x = R1(y, R2(x,y))`
    Rotation1a,
    /// `x = R2(R2(x,y), R1(x,y))`
    Rotation1b,
    /// `y = R2(R1(x,y), x)`
    Rotation2a,
    /// `y = R1(R2(x,y), R1(x,y))`
    Rotation2b,
    /// `(R1(x,y), R2(x,y)) = (R2(y, R2(x,y)), R1(R1(x,y), x))`
    Rotation3,
    /// `(y*z)*R2(x,z) = (y*x)*R1(x,z)`
    Riva,
    /// `R1(x,y) = R2(y*x, x)`
    RvFirst,
    /// `R2(x,y) = R1(y*x,x) * R2(y*x,x)`
    RvSecond,
    /// `R1(x*y,z)*y = R1(x,z*y)`
    RivbFirst,
    /// `R2(x*y,z) = R2(x,z*y)*y`
    RivbSecond,
}

impl Axiom {
    pub const QUANDLE: &'static [Axiom] = &[
        Axiom::RightBijective,
        Axiom::SelfDistributive,
        Axiom::Idempotent,
        Axiom::Involutive,
    ];

    pub const ROTATION: &'static [Axiom] = &[
        Axiom::Rotation1a,
        Axiom::Rotation1b,
        Axiom::Rotation2a,
        Axiom::Rotation2b,
        Axiom::Rotation3,
    ];

    pub const SINGULAR: &'static [Axiom] = &[
        Axiom::Riva,
        Axiom::RvFirst,
        Axiom::RvSecond,
        Axiom::RivbFirst,
        Axiom::RivbSecond,
    ];

    pub const ALL: &'static [Axiom] = &[
        Axiom::RightBijective,
        Axiom::SelfDistributive,
        Axiom::Idempotent,
        Axiom::Involutive,
        Axiom::Rotation1a,
        Axiom::Rotation1b,
        Axiom::Rotation2a,
        Axiom::Rotation2b,
        Axiom::Rotation3,
        Axiom::Riva,
        Axiom::RvFirst,
        Axiom::RvSecond,
        Axiom::RivbFirst,
        Axiom::RivbSecond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::RightBijective => "right-bijective",
            Axiom::SelfDistributive => "self-distributive",
            Axiom::Idempotent => "idempotent",
            Axiom::Involutive => "involutive",
            Axiom::Rotation1a => "rotation-1a",
            Axiom::Rotation1b => "rotation-1b",
            Axiom::Rotation2a => "rotation-2a",
            Axiom::Rotation2b => "rotation-2b",
            Axiom::Rotation3 => "rotation-3",
            Axiom::Riva => "riva",
            Axiom::RvFirst => "rv-1",
            Axiom::RvSecond => "rv-2",
            Axiom::RivbFirst => "rivb-1",
            Axiom::RivbSecond => "rivb-2",
        }
    }

    /// Number of free variables scanned by the checker.
    pub fn arity(self) -> usize {
        match self {
            Axiom::Idempotent => 1,
            Axiom::Involutive => 2,
            Axiom::RightBijective | Axiom::SelfDistributive => 3,
            Axiom::Riva | Axiom::RivbFirst | Axiom::RivbSecond => 3,
            _ => 2,
        }
    }

    /// The identity as component-wise `lhs = rhs` pairs. `RightBijective` has no
    /// equational form and returns an empty list.
    pub fn sides(self) -> Vec<(Expr, Expr)> {
        let (x, y, z) = (v(X), v(Y), v(Z));
        match self {
            Axiom::RightBijective => vec![],
            Axiom::SelfDistributive => vec![(
                st(st(x.clone(), y.clone()), z.clone()),
                st(st(x, z.clone()), st(y, z)),
            )],
            Axiom::Idempotent => vec![(st(x.clone(), x.clone()), x)],
            Axiom::Involutive => vec![(st(st(x.clone(), y.clone()), y), x)],
            Axiom::Rotation1a => vec![(x.clone(), r1(y.clone(), r2(x, y)))],
            Axiom::Rotation1b => vec![(x.clone(), r2(r2(x.clone(), y.clone()), r1(x, y)))],
            Axiom::Rotation2a => vec![(y.clone(), r2(r1(x.clone(), y), x))],
            Axiom::Rotation2b => vec![(y.clone(), r1(r2(x.clone(), y.clone()), r1(x, y)))],
            Axiom::Rotation3 => vec![
                (
                    r1(x.clone(), y.clone()),
                    r2(y.clone(), r2(x.clone(), y.clone())),
                ),
                (r2(x.clone(), y.clone()), r1(r1(x.clone(), y), x)),
            ],
            Axiom::Riva => vec![(
                st(st(y.clone(), z.clone()), r2(x.clone(), z.clone())),
                st(st(y, x.clone()), r1(x, z)),
            )],
            Axiom::RvFirst => vec![(r1(x.clone(), y.clone()), r2(st(y, x.clone()), x))],
            Axiom::RvSecond => vec![(
                r2(x.clone(), y.clone()),
                st(
                    r1(st(y.clone(), x.clone()), x.clone()),
                    r2(st(y, x.clone()), x),
                ),
            )],
            Axiom::RivbFirst => vec![(
                st(r1(st(x.clone(), y.clone()), z.clone()), y.clone()),
                r1(x, st(z, y)),
            )],
            Axiom::RivbSecond => vec![(
                r2(st(x.clone(), y.clone()), z.clone()),
                st(r2(x, st(z, y.clone())), y),
            )],
        }
    }

    /// `Some(witness)` iff the axiom fails at `tuple`.
    pub fn evaluate(self, s: &Singquandle, tuple: &[Color]) -> Option<Witness> {
        assert_eq!(
            tuple.len(),
            self.arity(),
            "wrong tuple length for {}",
            self.name()
        );
        if self == Axiom::RightBijective {
            let (y, x1, x2) = (tuple[0], tuple[1], tuple[2]);
            let (a, b) = (s.star.get(x1, y), s.star.get(x2, y));
            return (x1 != x2 && a == b).then(|| Witness {
                tuple: tuple.to_vec(),
                lhs: vec![a],
                rhs: vec![b],
            });
        }
        let sides = self.sides();
        let lhs: Vec<Color> = sides.iter().map(|(l, _)| l.eval(s, tuple)).collect();
        let rhs: Vec<Color> = sides.iter().map(|(_, r)| r.eval(s, tuple)).collect();
        (lhs != rhs).then(|| Witness {
            tuple: tuple.to_vec(),
            lhs,
            rhs,
        })
    }

    /// Lexicographically first failing tuple, first variable outermost.
    pub fn first_failure(self, s: &Singquandle) -> Option<Witness> {
        // fast paths for the quandle axioms
        match self {
            Axiom::RightBijective if quandle::non_bijective_column(&s.star).is_none() => {
                return None
            }
            Axiom::SelfDistributive if quandle::distributivity_failure(&s.star).is_none() => {
                return None
            }
            _ => {}
        }
        let n = s.order();
        let k = self.arity();
        let sides = self.sides();
        let mut tuple = vec![0; k];
        loop {
            let fails = if sides.is_empty() {
                self.evaluate(s, &tuple).is_some()
            } else {
                sides
                    .iter()
                    .any(|(l, r)| l.eval(s, &tuple) != r.eval(s, &tuple))
            };
            if fails {
                return self.evaluate(s, &tuple);
            }
            if !advance(&mut tuple, n) {
                return None;
            }
        }
    }
}

/// Odometer increment, last position fastest. Returns false after the last tuple.
pub(crate) fn advance(tuple: &mut [Color], n: usize) -> bool {
    for slot in tuple.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failing instance: the variable assignment and both sides' values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub tuple: Vec<Color>,
    pub lhs: Vec<Color>,
    pub rhs: Vec<Color>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomStatus {
    pub axiom: Axiom,
    pub witness: Option<Witness>,
}

impl AxiomStatus {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Per-axiom pass/fail results, in checking order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub statuses: Vec<AxiomStatus>,
}

impl AxiomReport {
    pub fn run(s: &Singquandle, axioms: &[Axiom]) -> Self {
        let statuses = axioms
            .iter()
            .map(|&axiom| AxiomStatus {
                axiom,
                witness: axiom.first_failure(s),
            })
            .collect();
        AxiomReport { statuses }
    }

    pub fn all_pass(&self) -> bool {
        self.statuses.iter().all(AxiomStatus::passed)
    }

    pub fn status(&self, axiom: Axiom) -> Option<&AxiomStatus> {
        self.statuses.iter().find(|s| s.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomStatus> {
        self.statuses.iter().filter(|s| !s.passed())
    }

    pub fn merge(mut self, other: AxiomReport) -> Self {
        self.statuses.extend(other.statuses);
        self
    }

    /// One line per axiom; colors are shifted by `offset` (1 for one-indexed output).
    pub fn render(&self, offset: usize) -> String {
        let fmt_list = |v: &[Color]| {
            v.iter()
                .map(|c| (c + offset).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut out = String::new();
        for st in &self.statuses {
            match &st.witness {
                None => out.push_str(&format!("pass {}\n", st.axiom)),
                Some(w) => out.push_str(&format!(
                    "fail {} at ({}) lhs {} rhs {}\n",
                    st.axiom,
                    fmt_list(&w.tuple),
                    fmt_list(&w.lhs),
                    fmt_list(&w.rhs)
                )),
            }
        }
        out
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(0))
    }
}

/// The five identities read off the quarter-turn symmetry of a singular crossing.
pub fn check_rotation_axioms(s: &Singquandle) -> AxiomReport {
    AxiomReport::run(s, Axiom::ROTATION)
}

/// The identities from the singular Reidemeister moves.
pub fn check_singquandle_axioms(s: &Singquandle) -> AxiomReport {
    AxiomReport::run(s, Axiom::SINGULAR)
}

/// The quandle-level part of the full predicate on a bare operation table.
pub fn check_quandle_axioms(star: &OpTable) -> AxiomReport {
    let s = Singquandle::new(star.clone(), star.clone(), star.clone())
        .expect("equal orders by construction");
    AxiomReport::run(&s, Axiom::QUANDLE)
}
