//! Coloring counts of singular diagrams.
//!
//! Two independent backends:
//!
//! * [`count_colorings_bruteforce`] searches assignments of colors to semiarcs
//!   with propagation and works for any finite structure.
//! * [`count_colorings_linear`] handles Alexander structures by counting the
//!   kernel of the homogeneous system over `Z_n` through a Smith-type
//!   diagonalization. Composite `n` is fine.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::alexander::{build_tables, AlexanderParams};
use crate::axioms::{Axiom, Singquandle};
use crate::diagram::{Crossing, SingularDiagram};
use crate::quandle;
use crate::smith::Matrix;
use crate::table::Color;

pub const DEFAULT_LIST_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    BruteForce,
    Linear,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::BruteForce => "brute",
            Backend::Linear => "linear",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringReport {
    pub count: u128,
    /// Lexicographically sorted arc assignments, when requested.
    pub colorings: Option<Vec<Vec<Color>>>,
    /// Set when `colorings` holds only the smallest `cap` entries.
    pub truncated: bool,
    pub backend: Backend,
}

impl ColoringReport {
    fn count_only(count: u128, backend: Backend) -> Self {
        ColoringReport {
            count,
            colorings: None,
            truncated: false,
            backend,
        }
    }
}

/// `count <N>` followed by one line per listed coloring.
impl fmt::Display for ColoringReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "count {}", self.count)?;
        if let Some(list) = &self.colorings {
            for c in list {
                let line: Vec<String> = c.iter().map(Color::to_string).collect();
                writeln!(f, "{}", line.join(" "))?;
            }
            if self.truncated {
                writeln!(f, "# truncated after {} colorings", list.len())?;
            }
        }
        Ok(())
    }
}

const UNSET: Color = usize::MAX;

/// Backtracking state: partial assignment plus an undo trail.
struct Search<'a> {
    s: &'a Singquandle,
    n: usize,
    crossings: &'a [Crossing],
    incident: Vec<Vec<usize>>,
    /// `*` is involutive, so `a = c * b` may be deduced at classical crossings.
    involutive: bool,
    /// Rotation identities hold, so all four readings of a singular crossing apply.
    rotational: bool,
    colors: Vec<Color>,
    trail: Vec<usize>,
}

impl<'a> Search<'a> {
    fn new(d: &'a SingularDiagram, s: &'a Singquandle, arcs: usize) -> Self {
        let mut incident = vec![vec![]; arcs];
        for (i, c) in d.crossings().iter().enumerate() {
            for &a in c.arcs() {
                if incident[a].last() != Some(&i) {
                    incident[a].push(i);
                }
            }
        }
        Search {
            s,
            n: s.order(),
            crossings: d.crossings(),
            incident,
            involutive: quandle::is_involutive(s.star()),
            rotational: Axiom::ROTATION.iter().all(|a| a.first_failure(s).is_none()),
            colors: vec![UNSET; arcs],
            trail: vec![],
        }
    }

    fn set(&mut self, arc: usize, value: Color, queue: &mut Vec<usize>) -> bool {
        match self.colors[arc] {
            UNSET => {
                self.colors[arc] = value;
                self.trail.push(arc);
                queue.extend_from_slice(&self.incident[arc]);
                true
            }
            v => v == value,
        }
    }

    fn known(&self, a: usize) -> Option<Color> {
        (self.colors[a] != UNSET).then_some(self.colors[a])
    }

    /// Deduces everything forced by crossing `ci`; false on contradiction.
    fn revise(&mut self, ci: usize, queue: &mut Vec<usize>) -> bool {
        match self.crossings[ci] {
            Crossing::Classical([a, b, c]) => match (self.known(a), self.known(b), self.known(c)) {
                (Some(x), Some(y), _) => self.set(c, self.s.star().get(x, y), queue),
                (None, Some(y), Some(z)) if self.involutive => {
                    self.set(a, self.s.star().get(z, y), queue)
                }
                _ => true,
            },
            Crossing::Singular(arcs) => {
                let [a, b, c, d] = arcs;
                // (inputs, outputs) for each quarter-turn reading
                let readings: &[[usize; 4]] = if self.rotational {
                    &[[a, b, c, d], [b, d, a, c], [d, c, b, a], [c, a, d, b]]
                } else {
                    &[[a, b, c, d]]
                };
                for &[p, q, r1, r2] in readings {
                    if let (Some(x), Some(y)) = (self.known(p), self.known(q)) {
                        if !self.set(r1, self.s.r1().get(x, y), queue)
                            || !self.set(r2, self.s.r2().get(x, y), queue)
                        {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }

    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(ci) = queue.pop() {
            if !self.revise(ci, &mut queue) {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().expect("trail above mark");
            self.colors[a] = UNSET;
        }
    }

    fn assign(&mut self, arc: usize, value: Color) -> bool {
        let mut queue = vec![];
        self.set(arc, value, &mut queue) && self.propagate(queue)
    }

    /// Unassigned arc touching the most crossings that already have a known
    /// leg; ties go to the lowest label.
    fn pick_arc(&self) -> Option<usize> {
        let mut best: Option<(usize, usize, usize)> = None;
        for a in 0..self.colors.len() {
            if self.colors[a] != UNSET {
                continue;
            }
            let score = self.incident[a]
                .iter()
                .filter(|&&ci| {
                    self.crossings[ci]
                        .arcs()
                        .iter()
                        .any(|&o| self.colors[o] != UNSET)
                })
                .count();
            let key = (score, self.incident[a].len(), a);
            match best {
                Some((s, deg, _)) if (s, deg) >= (key.0, key.1) => {}
                _ => best = Some(key),
            }
        }
        best.map(|(_, _, a)| a)
    }

    fn consistent(&self) -> bool {
        self.crossings.iter().all(|c| match *c {
            Crossing::Classical([a, b, c]) => {
                self.s.star().get(self.colors[a], self.colors[b]) == self.colors[c]
            }
            Crossing::Singular([a, b, c, d]) => {
                let (x, y) = (self.colors[a], self.colors[b]);
                self.s.r1().get(x, y) == self.colors[c] && self.s.r2().get(x, y) == self.colors[d]
            }
        })
    }

    fn run(&mut self, sink: &mut Sink) {
        let Some(arc) = self.pick_arc() else {
            // propagation guarantees each reading, but the final check keeps
            // the count exact for structures that fail the rotation identities
            if self.consistent() {
                sink.accept(&self.colors);
            }
            return;
        };
        for v in 0..self.n {
            let mark = self.trail.len();
            if self.assign(arc, v) {
                self.run(sink);
            }
            self.undo_to(mark);
        }
    }
}

struct Sink {
    count: u128,
    cap: Option<usize>,
    kept: BTreeSet<Vec<Color>>,
    truncated: bool,
}

impl Sink {
    fn new(cap: Option<usize>) -> Self {
        Sink {
            count: 0,
            cap,
            kept: BTreeSet::new(),
            truncated: false,
        }
    }

    fn accept(&mut self, colors: &[Color]) {
        self.count += 1;
        if let Some(cap) = self.cap {
            self.kept.insert(colors.to_vec());
            if self.kept.len() > cap {
                self.kept.pop_last();
                self.truncated = true;
            }
        }
    }

    fn merge(mut self, other: Sink) -> Sink {
        self.count += other.count;
        self.truncated |= other.truncated;
        self.kept.extend(other.kept);
        if let Some(cap) = self.cap {
            while self.kept.len() > cap {
                self.kept.pop_last();
                self.truncated = true;
            }
        }
        self
    }
}

/// Exact coloring count by propagation-first backtracking.
///
/// With `list`, the report carries the sorted colorings (at most
/// [`DEFAULT_LIST_CAP`]).
pub fn count_colorings_bruteforce(
    d: &SingularDiagram,
    s: &Singquandle,
    list: bool,
) -> ColoringReport {
    count_colorings_bruteforce_capped(d, s, list.then_some(DEFAULT_LIST_CAP))
}

pub fn count_colorings_bruteforce_capped(
    d: &SingularDiagram,
    s: &Singquandle,
    cap: Option<usize>,
) -> ColoringReport {
    let n = s.order();
    let free_factor = pow_u128(n as u128, d.free());
    let listing = cap.is_some();

    // arcs outside every crossing only multiply the count, unless listed
    let touched: BTreeSet<usize> = d
        .crossings()
        .iter()
        .flat_map(|c| c.arcs().iter().copied())
        .collect();
    let loose = d.arcs() - touched.len();
    let loose_factor = if listing {
        1
    } else {
        pow_u128(n as u128, loose)
    };

    let fresh = || {
        let mut search = Search::new(d, s, d.arcs());
        if !listing {
            for a in (0..d.arcs()).filter(|a| !touched.contains(a)) {
                search.colors[a] = 0;
            }
        }
        search
    };

    let root = fresh();
    let sink = match root.pick_arc() {
        None => {
            let mut root = root;
            let mut sink = Sink::new(cap);
            root.run(&mut sink);
            sink
        }
        // split the first decision across workers
        Some(first) => (0..n)
            .into_par_iter()
            .map(|v| {
                let mut search = fresh();
                let mut sink = Sink::new(cap);
                if search.assign(first, v) {
                    search.run(&mut sink);
                }
                sink
            })
            .reduce(|| Sink::new(cap), Sink::merge),
    };

    let count = sink
        .count
        .checked_mul(loose_factor)
        .and_then(|c| c.checked_mul(free_factor))
        .expect("coloring count overflows u128");
    ColoringReport {
        count,
        colorings: listing.then(|| sink.kept.into_iter().collect()),
        truncated: sink.truncated,
        backend: Backend::BruteForce,
    }
}

fn pow_u128(base: u128, exp: usize) -> u128 {
    base.checked_pow(exp as u32)
        .expect("coloring count overflows u128")
}

/// The homogeneous system `A c = 0 (mod n)` whose solutions are the colorings
/// of a diagram by an Alexander structure. One row per classical crossing,
/// two per singular crossing, one column per arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularSystem {
    pub modulus: u64,
    pub matrix: Matrix<i64>,
}

impl ModularSystem {
    pub fn new(d: &SingularDiagram, p: &AlexanderParams) -> Self {
        let ops = p.linear_ops();
        let n = p.n as i64;
        let m = d.arcs();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        // row encodes: out - cx * in_left - cy * in_right
        let mut push_row = |out: usize, left: usize, right: usize, (cx, cy): (u64, u64)| {
            let mut row = vec![0i64; m];
            row[out] += 1;
            row[left] -= cx as i64;
            row[right] -= cy as i64;
            rows.push(row.into_iter().map(|v| v.rem_euclid(n)).collect());
        };
        for c in d.crossings() {
            match *c {
                Crossing::Classical([a, b, c]) => push_row(c, a, b, ops.star),
                Crossing::Singular([a, b, c, d]) => {
                    push_row(c, a, b, ops.r1);
                    push_row(d, a, b, ops.r2);
                }
            }
        }
        ModularSystem {
            modulus: p.n,
            matrix: Matrix::from_rows(rows, m),
        }
    }

    /// Number of solutions in `Z_n^arcs`.
    pub fn solution_count(&self) -> u128 {
        self.matrix
            .kernel_size_mod(self.modulus)
            .expect("coloring count overflows u128")
    }
}

/// Coloring count by linear algebra over `Z_n`.
pub fn count_colorings_linear(d: &SingularDiagram, p: &AlexanderParams) -> ColoringReport {
    let system = ModularSystem::new(d, p);
    let count = system
        .solution_count()
        .checked_mul(pow_u128(p.n as u128, d.free()))
        .expect("coloring count overflows u128");
    ColoringReport::count_only(count, Backend::Linear)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fig8Side {
    Left,
    Right,
}

/// Coefficients `(c1, c2)` of the two simplified colorability conditions
/// `c1 (x - y) = 0`, `c2 (x - y) = 0` for the singular crossing followed by
/// `2k + 1` classical crossings.
pub fn fig8_coefficients(k: u64, side: Fig8Side, p: &AlexanderParams) -> (u64, u64) {
    let (n, t, b, k) = (p.n as i128, p.t as i128, p.b as i128, k as i128);
    let (c1, c2) = match side {
        Fig8Side::Left => ((1 - b) * (1 - b), -k * t + b + k),
        Fig8Side::Right => (-k + k * t + b, -1 + k + t - k + b),
    };
    (c1.rem_euclid(n) as u64, c2.rem_euclid(n) as u64)
}

/// Counts the pairs `(x, y)` in `Z_n^2` satisfying both conditions; the
/// pairs are listed in the report.
pub fn fig8_system_count(k: u64, side: Fig8Side, p: &AlexanderParams) -> ColoringReport {
    let (c1, c2) = fig8_coefficients(k, side, p);
    let n = p.n;
    let mut pairs = vec![];
    for x in 0..n {
        for y in 0..n {
            let diff = (x + n - y) % n;
            let holds = |c: u64| (c as u128 * diff as u128).is_multiple_of(n as u128);
            if holds(c1) && holds(c2) {
                pairs.push(vec![x as Color, y as Color]);
            }
        }
    }
    ColoringReport {
        count: pairs.len() as u128,
        colorings: Some(pairs),
        truncated: false,
        backend: Backend::Linear,
    }
}

/// Anything that assigns a coloring count to a diagram.
pub trait ColoringInvariant {
    fn count(&self, d: &SingularDiagram) -> u128;
}

impl ColoringInvariant for Singquandle {
    fn count(&self, d: &SingularDiagram) -> u128 {
        count_colorings_bruteforce(d, self, false).count
    }
}

impl ColoringInvariant for AlexanderParams {
    fn count(&self, d: &SingularDiagram) -> u128 {
        count_colorings_linear(d, self).count
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The family member at `index` gives different counts.
    Separated {
        index: usize,
        first: u128,
        second: u128,
    },
    NotSeparated,
}

/// Scans `family` in order for the first structure whose counts differ.
pub fn distinguish<S: ColoringInvariant>(
    d1: &SingularDiagram,
    d2: &SingularDiagram,
    family: &[S],
) -> Verdict {
    for (index, s) in family.iter().enumerate() {
        let (first, second) = (s.count(d1), s.count(d2));
        if first != second {
            return Verdict::Separated {
                index,
                first,
                second,
            };
        }
    }
    Verdict::NotSeparated
}

/// Brute-force count over the tabulated Alexander structure.
pub fn count_colorings_tabulated(d: &SingularDiagram, p: &AlexanderParams) -> ColoringReport {
    let s = build_tables(p).expect("params validated at construction");
    count_colorings_bruteforce(d, &s, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{fig9_left, fig9_right, kink, rii_clasp};
    use crate::tangle::{braid_closure, TangleWord};
    use itertools::Itertools;
    use proptest::prelude::*;

    fn params(n: u64, t: i64, b: i64) -> AlexanderParams {
        AlexanderParams::new(n, t, b).unwrap()
    }

    fn alex(n: u64, t: i64, b: i64) -> Singquandle {
        build_tables(&params(n, t, b)).unwrap()
    }

    /// Every assignment, checked crossing by crossing.
    fn exhaustive(d: &SingularDiagram, s: &Singquandle) -> Vec<Vec<Color>> {
        let n = s.order();
        let ok = |c: &[Color]| {
            d.crossings().iter().all(|x| match *x {
                Crossing::Classical([a, b, o]) => s.star().get(c[a], c[b]) == c[o],
                Crossing::Singular([a, b, p, q]) => {
                    s.r1().get(c[a], c[b]) == c[p] && s.r2().get(c[a], c[b]) == c[q]
                }
            })
        };
        if d.arcs() == 0 {
            return vec![vec![]];
        }
        (0..d.arcs())
            .map(|_| 0..n)
            .multi_cartesian_product()
            .filter(|c| ok(c))
            .collect()
    }

    fn both(d: &SingularDiagram, n: u64, t: i64, b: i64) -> u128 {
        let p = params(n, t, b);
        let lin = count_colorings_linear(d, &p).count;
        assert_eq!(lin, count_colorings_tabulated(d, &p).count, "{p}");
        lin
    }

    #[test]
    fn fig9_counts() {
        assert_eq!(both(&fig9_left(), 10, 9, 4), 20);
        assert_eq!(both(&fig9_right(), 10, 9, 4), 10);
        assert_eq!(both(&fig9_left(), 4, 1, 2), 16);
        assert_eq!(both(&fig9_right(), 4, 1, 2), 4);
        assert_eq!(both(&fig9_left(), 2, 1, 0), 4);
        assert_eq!(both(&fig9_right(), 2, 1, 0), 2);
    }

    #[test]
    fn fig9_left_solutions_pair_mod_5() {
        let r = count_colorings_bruteforce(&fig9_left(), &alex(10, 9, 4), true);
        let cs = r.colorings.unwrap();
        assert_eq!(cs.len(), 20);
        assert!(!r.truncated);
        for c in &cs {
            assert_eq!(c[0] % 5, c[1] % 5, "{c:?}");
        }
        assert!(cs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn small_diagrams() {
        let unknot = SingularDiagram::new(1, 0, vec![]).unwrap();
        assert_eq!(both(&unknot, 5, 4, 3), 5);
        let empty = SingularDiagram::new(0, 0, vec![]).unwrap();
        assert_eq!(both(&empty, 5, 4, 3), 1);
        for p in [(5, 4, 3), (10, 9, 4), (8, 1, 4)] {
            let n = p.0 as u128;
            assert_eq!(both(&kink(), p.0, p.1, p.2), n);
            assert_eq!(both(&rii_clasp(), p.0, p.1, p.2), n * n);
        }
    }

    #[test]
    fn tau_then_three_sigmas() {
        let d = braid_closure(&TangleWord::parse(2, "t1 s1 s1 s1").unwrap());
        assert_eq!(both(&d, 5, 4, 3), 25);
    }

    #[test]
    fn free_components_multiply() {
        let d = braid_closure(&TangleWord::parse(3, "t1").unwrap());
        assert_eq!(d.free(), 1);
        assert_eq!(
            both(&d, 5, 4, 3),
            5 * both(
                &braid_closure(&TangleWord::parse(2, "t1").unwrap()),
                5,
                4,
                3
            )
        );
    }

    #[test]
    fn capped_listing_keeps_smallest() {
        let s = alex(5, 4, 3);
        let d = rii_clasp();
        let all = count_colorings_bruteforce(&d, &s, true).colorings.unwrap();
        let r = count_colorings_bruteforce_capped(&d, &s, Some(7));
        assert_eq!(r.count, 25);
        assert!(r.truncated);
        assert_eq!(r.colorings.as_deref(), Some(&all[..7]));
        let text = r.to_string();
        assert!(text.starts_with("count 25\n"));
        assert!(text.ends_with("# truncated after 7 colorings\n"));
    }

    #[test]
    fn fig8_systems() {
        let r = fig8_system_count(1, Fig8Side::Left, &params(5, 4, 3));
        assert_eq!(r.count, 5);
        assert!(r.colorings.unwrap().iter().all(|c| c[0] == c[1]));
        assert_eq!(
            fig8_system_count(1, Fig8Side::Right, &params(4, 1, 2)).count,
            8
        );
        // (1 - b)^2 invertible forces the diagonal
        for p in (2..=12).flat_map(crate::alexander::find_params) {
            let n = p.n;
            let c = (1 + n - p.b) % n * ((1 + n - p.b) % n) % n;
            if num_integer::Integer::gcd(&c, &n) == 1 {
                for k in 1..4 {
                    assert_eq!(fig8_system_count(k, Fig8Side::Left, &p).count, n as u128);
                }
            }
        }
    }

    #[test]
    fn distinguish_fig9() {
        let family: Vec<_> = (2..=10).flat_map(crate::alexander::find_params).collect();
        match distinguish(&fig9_left(), &fig9_right(), &family) {
            Verdict::Separated {
                index,
                first,
                second,
            } => {
                assert_eq!(family[index], params(2, 1, 0));
                assert_eq!((first, second), (4, 2));
            }
            v => panic!("{v:?}"),
        }
        assert_eq!(
            distinguish(&fig9_left(), &fig9_right(), &[params(10, 9, 4)]),
            Verdict::Separated {
                index: 0,
                first: 20,
                second: 10
            }
        );
        assert_eq!(
            distinguish(&fig9_left(), &fig9_left(), &family),
            Verdict::NotSeparated
        );
    }

    #[test]
    fn rotation_preserves_counts() {
        let d = fig9_left().rotate_singular(0).unwrap();
        assert_eq!(both(&d, 10, 9, 4), 20);
        let d = fig9_right().rotate_singular(1).unwrap();
        assert_eq!(both(&d, 10, 9, 4), 10);
    }

    #[test]
    fn non_involutive_star_still_counts() {
        // propagation must not read a = c * b backwards here
        let star = crate::table::OpTable::from_fn(5, |x, y| 2 * x + 4 * y).unwrap();
        let s = Singquandle::new(star.clone(), star.clone(), star).unwrap();
        for d in [kink(), rii_clasp(), fig9_left()] {
            assert_eq!(
                count_colorings_bruteforce(&d, &s, false).count,
                exhaustive(&d, &s).len() as u128
            );
        }
    }

    fn arb_diagram() -> impl Strategy<Value = SingularDiagram> {
        (1usize..=5, 0usize..=1).prop_flat_map(|(arcs, free)| {
            let crossing = prop_oneof![
                prop::array::uniform3(0..arcs).prop_map(Crossing::Classical),
                prop::array::uniform4(0..arcs).prop_map(Crossing::Singular),
            ];
            prop::collection::vec(crossing, 0..4)
                .prop_map(move |cs| SingularDiagram::new(arcs, free, cs).unwrap())
        })
    }

    fn arb_params() -> impl Strategy<Value = AlexanderParams> {
        let all: Vec<_> = (2..=6).flat_map(crate::alexander::find_params).collect();
        prop::sample::select(all)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn backends_agree_with_exhaustive(d in arb_diagram(), p in arb_params()) {
            let s = build_tables(&p).unwrap();
            let plain = exhaustive(&d, &s);
            let expect = plain.len() as u128 * (p.n as u128).pow(d.free() as u32);
            prop_assert_eq!(count_colorings_linear(&d, &p).count, expect);
            let listed = count_colorings_bruteforce(&d, &s, true);
            prop_assert_eq!(listed.count, expect);
            if d.free() == 0 {
                prop_assert_eq!(listed.colorings.unwrap(), plain);
            }
        }

        #[test]
        fn invariant_under_relabel_and_reorder(
            d in arb_diagram(),
            p in arb_params(),
            seed in any::<u64>(),
        ) {
            use std::collections::hash_map::DefaultHasher;
            use std::hash::{Hash, Hasher};
            let key = |i: usize| {
                let mut h = DefaultHasher::new();
                (seed, i).hash(&mut h);
                h.finish()
            };
            let perm: Vec<usize> = (0..d.arcs()).sorted_by_key(|&i| key(i)).collect();
            let order: Vec<usize> = (0..d.crossings().len()).sorted_by_key(|&i| key(i + 100)).collect();
            let e = d.relabel_arcs(&perm).reorder_crossings(&order);
            let base = count_colorings_linear(&d, &p).count;
            prop_assert_eq!(count_colorings_linear(&e, &p).count, base);
            prop_assert_eq!(count_colorings_tabulated(&e, &p).count, base);
        }
    }
}
