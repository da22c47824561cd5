//! Exhaustive search for all singquandles of small order.
//!
//! The star table is fixed first: every column of an involutive quandle is an
//! involution fixing its own index, so candidates are products of such
//! involutions filtered by self-distributivity. For each star the search then
//! fills `R1` cell by cell; `R2` is never searched because
//! `R1(x, y) = R2(y * x, x)` gives `R2(u, x) = R1(x, u * x)`.
//!
//! Pruning is propagation over the axiom instances: whenever one side of an
//! identity is known and the other side's outermost lookup has known
//! arguments, that cell is forced. `R1` is also equivariant under every right
//! multiplication, `R1(a * y, z * y) = R1(a, z) * y`, which spreads each
//! assignment along its orbit. Every completed structure is re-checked with
//! the full checker before it is counted.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;

use crate::axioms::{Axiom, Expr, Op, Singquandle};
use crate::error::{Error, Result};
use crate::format::serialize_tables;
use crate::quandle;
use crate::table::{Color, OpTable};

pub const MAX_ORDER: usize = 5;

/// Result of a complete search at one order.
#[derive(Clone, Debug)]
pub struct Census {
    pub order: usize,
    /// Number of raw `(star, r1, r2)` triples passing the full checker.
    pub total: usize,
    /// Every structure found, sorted.
    pub structures: Vec<Singquandle>,
    /// Canonical representatives of the isomorphism classes, when requested.
    pub classes: Option<Vec<Singquandle>>,
    pub elapsed: Duration,
}

/// `order`, `count`, then (with classes) `classes` and one table block per
/// representative, blocks separated by blank lines.
impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "order {}", self.order)?;
        writeln!(f, "count {}", self.total)?;
        if let Some(classes) = &self.classes {
            writeln!(f, "classes {}", classes.len())?;
            for s in classes {
                writeln!(f)?;
                f.write_str(&serialize_tables(s))?;
            }
        }
        Ok(())
    }
}

/// All involutions of `0..n` fixing `fixed`, as image vectors.
fn involutions_fixing(n: usize, fixed: usize) -> Vec<Vec<Color>> {
    fn extend(perm: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
        let Some(first) = perm.iter().position(|&v| v == usize::MAX) else {
            out.push(perm.clone());
            return;
        };
        perm[first] = first;
        extend(perm, out);
        for other in first + 1..perm.len() {
            if perm[other] == usize::MAX {
                perm[first] = other;
                perm[other] = first;
                extend(perm, out);
                perm[other] = usize::MAX;
            }
        }
        perm[first] = usize::MAX;
    }
    let mut perm = vec![usize::MAX; n];
    perm[fixed] = fixed;
    let mut out = vec![];
    extend(&mut perm, &mut out);
    out
}

/// Every involutive quandle table of order `n` (labelled, not up to isomorphism).
pub fn involutive_quandles(n: usize) -> Result<Vec<OpTable>> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let columns: Vec<Vec<Vec<Color>>> = (0..n).map(|y| involutions_fixing(n, y)).collect();
    let mut out: Vec<OpTable> = columns
        .iter()
        .multi_cartesian_product()
        .filter_map(|cols| {
            let t = OpTable::from_fn(n, |x, y| cols[y][x]).expect("n >= 1");
            quandle::distributivity_failure(&t).is_none().then_some(t)
        })
        .collect();
    out.sort();
    Ok(out)
}

const UNSET: Color = usize::MAX;

struct Instance {
    lhs: usize,
    rhs: usize,
    vars: [Color; 3],
}

/// Axiom instances over `n` colors, shared by every search at that order.
struct Program {
    exprs: Vec<Expr>,
    instances: Vec<Instance>,
}

impl Program {
    fn new(n: usize) -> Self {
        let mut exprs = vec![];
        let mut instances = vec![];
        for &ax in Axiom::ROTATION.iter().chain(Axiom::SINGULAR) {
            // holds by construction of R2
            if ax == Axiom::RvFirst {
                continue;
            }
            for (l, r) in ax.sides() {
                let (li, ri) = (exprs.len(), exprs.len() + 1);
                exprs.push(l);
                exprs.push(r);
                for tuple in (0..ax.arity()).map(|_| 0..n).multi_cartesian_product() {
                    let mut vars = [0; 3];
                    vars[..tuple.len()].copy_from_slice(&tuple);
                    instances.push(Instance {
                        lhs: li,
                        rhs: ri,
                        vars,
                    });
                }
            }
        }
        Program { exprs, instances }
    }
}

/// Search for every admissible `R1` over a fixed involutive star.
struct R1Search<'a> {
    n: usize,
    star: &'a OpTable,
    program: &'a Program,
    cells: Vec<Color>,
    trail: Vec<usize>,
}

impl<'a> R1Search<'a> {
    fn new(star: &'a OpTable, program: &'a Program) -> Self {
        let n = star.order();
        R1Search {
            n,
            star,
            program,
            cells: vec![UNSET; n * n],
            trail: vec![],
        }
    }

    /// Index of the `R1` cell read by `op(a, b)`, for `op` in `R1`, `R2`.
    fn cell_of(&self, op: Op, a: Color, b: Color) -> usize {
        match op {
            Op::R1 => a * self.n + b,
            Op::R2 => b * self.n + self.star.get(a, b),
            Op::Star => unreachable!("star is not searched"),
        }
    }

    fn eval(&self, e: &Expr, vars: &[Color]) -> Option<Color> {
        e.eval_with(vars, &mut |op, a, b| match op {
            Op::Star => Some(self.star.get(a, b)),
            _ => {
                let v = self.cells[self.cell_of(op, a, b)];
                (v != UNSET).then_some(v)
            }
        })
    }

    /// Records `cells[c] = v` and its equivariant images; false on conflict.
    fn set(&mut self, c: usize, v: Color) -> bool {
        let mut stack = vec![(c, v)];
        while let Some((c, v)) = stack.pop() {
            match self.cells[c] {
                UNSET => {
                    self.cells[c] = v;
                    self.trail.push(c);
                    let (a, z) = (c / self.n, c % self.n);
                    for y in 0..self.n {
                        let img = self.star.get(a, y) * self.n + self.star.get(z, y);
                        stack.push((img, self.star.get(v, y)));
                    }
                }
                old if old != v => return false,
                _ => {}
            }
        }
        true
    }

    /// Makes `e` evaluate to `target`, if that is forced and decidable now.
    /// Returns `Some(changed)`, or `None` on conflict.
    fn force(&mut self, e: &Expr, vars: &[Color], target: Color) -> Option<bool> {
        match e {
            Expr::Var(i) => (vars[*i] == target).then_some(false),
            Expr::Apply(op, a, b) => {
                let Some(bv) = self.eval(b, vars) else {
                    return Some(false);
                };
                match op {
                    // (a * bv) = target with involutive star means a = target * bv
                    Op::Star => {
                        let want = self.star.get(target, bv);
                        match self.eval(a, vars) {
                            Some(av) => (av == want).then_some(false),
                            None => self.force(a, vars, want),
                        }
                    }
                    _ => {
                        let Some(av) = self.eval(a, vars) else {
                            return Some(false);
                        };
                        let c = self.cell_of(*op, av, bv);
                        match self.cells[c] {
                            UNSET => self.set(c, target).then_some(true),
                            v => (v == target).then_some(false),
                        }
                    }
                }
            }
        }
    }

    fn propagate(&mut self) -> bool {
        loop {
            let mut changed = false;
            let program = self.program;
            for inst in &program.instances {
                let (lhs, rhs) = (&program.exprs[inst.lhs], &program.exprs[inst.rhs]);
                let vars = &inst.vars;
                let step = match (self.eval(lhs, vars), self.eval(rhs, vars)) {
                    (Some(a), Some(b)) => (a == b).then_some(false),
                    (Some(a), None) => self.force(rhs, vars, a),
                    (None, Some(b)) => self.force(lhs, vars, b),
                    (None, None) => Some(false),
                };
                match step {
                    None => return false,
                    Some(c) => changed |= c,
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let c = self.trail.pop().expect("trail above mark");
            self.cells[c] = UNSET;
        }
    }

    fn tables(&self) -> Singquandle {
        let n = self.n;
        let r1 = OpTable::from_flat(n, self.cells.clone());
        let r2 =
            OpTable::from_fn(n, |u, x| self.cells[x * n + self.star.get(u, x)]).expect("n >= 1");
        Singquandle::new(self.star.clone(), r1, r2).expect("equal orders")
    }

    fn run(&mut self, out: &mut Vec<Singquandle>) {
        let Some(c) = self.cells.iter().position(|&v| v == UNSET) else {
            let s = self.tables();
            if s.is_verified() {
                out.push(s);
            }
            return;
        };
        for v in 0..self.n {
            let mark = self.trail.len();
            if self.set(c, v) && self.propagate() {
                self.run(out);
            }
            self.undo_to(mark);
        }
    }
}

/// All singquandles with the given star table.
pub fn singquandles_over(star: &OpTable) -> Vec<Singquandle> {
    singquandles_with(star, &Program::new(star.order()))
}

fn singquandles_with(star: &OpTable, program: &Program) -> Vec<Singquandle> {
    let mut search = R1Search::new(star, program);
    let mut out = vec![];
    if search.propagate() {
        search.run(&mut out);
    }
    out
}

fn check_order(n: usize) -> Result<()> {
    if (1..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange {
            order: n,
            min: 1,
            max: MAX_ORDER,
        })
    }
}

/// Every singquandle of order `n`, sorted.
pub fn all_singquandles(n: usize) -> Result<Vec<Singquandle>> {
    check_order(n)?;
    let stars = involutive_quandles(n)?;
    let program = Program::new(n);
    let mut out: Vec<Singquandle> = stars
        .par_iter()
        .flat_map_iter(|star| singquandles_with(star, &program))
        .collect();
    out.sort();
    Ok(out)
}

pub fn enumerate_singquandles(n: usize, up_to_iso: bool) -> Result<Census> {
    let start = Instant::now();
    let structures = all_singquandles(n)?;
    let classes = up_to_iso.then(|| {
        structures
            .par_iter()
            .map(canonical_form)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    });
    Ok(Census {
        order: n,
        total: structures.len(),
        structures,
        classes,
        elapsed: start.elapsed(),
    })
}

/// Lexicographically least relabeling over all `n!` permutations.
pub fn canonical_form(s: &Singquandle) -> Singquandle {
    (0..s.order())
        .permutations(s.order())
        .map(|p| s.relabel(&p))
        .min()
        .expect("at least one permutation")
}

/// Whether one permutation carries all three tables of `s1` onto `s2`.
pub fn is_isomorphic(s1: &Singquandle, s2: &Singquandle) -> bool {
    s1.order() == s2.order()
        && (0..s1.order())
            .permutations(s1.order())
            .any(|p| &s1.relabel(&p) == s2)
}
