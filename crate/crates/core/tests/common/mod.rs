//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's checker or solvers.

#![allow(dead_code)]

use rayon::prelude::*;

pub type Table = Vec<Vec<usize>>;

/// A raw `(star, r1, r2)` triple.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Triple {
    pub star: Table,
    pub r1: Table,
    pub r2: Table,
}

/// Table number `code` in base-`n` row-major order.
pub fn decode(n: usize, mut code: u64) -> Table {
    let mut t = vec![vec![0; n]; n];
    for row in t.iter_mut() {
        for v in row.iter_mut() {
            *v = (code % n as u64) as usize;
            code /= n as u64;
        }
    }
    t
}

pub fn table_count(n: usize) -> u64 {
    (n as u64).pow((n * n) as u32)
}

pub fn is_involutive_quandle(s: &Table) -> bool {
    let n = s.len();
    let r = 0..n;
    r.clone().all(|x| s[x][x] == x)
        && r.clone().all(|y| {
            let mut seen = vec![false; n];
            r.clone()
                .all(|x| !std::mem::replace(&mut seen[s[x][y]], true))
        })
        && r.clone().all(|x| r.clone().all(|y| s[s[x][y]][y] == x))
        && r.clone().all(|x| {
            r.clone()
                .all(|y| r.clone().all(|z| s[s[x][y]][z] == s[s[x][z]][s[y][z]]))
        })
}

/// Every singquandle identity, written out longhand.
pub fn is_singquandle(s: &Table, r1: &Table, r2: &Table) -> bool {
    let flat = |t: &Table| -> Vec<usize> { t.concat() };
    is_singquandle_flat(s.len(), &flat(s), &flat(r1), &flat(r2))
}

/// As [`is_singquandle`] on row-major tables.
pub fn is_singquandle_flat(n: usize, s: &[usize], r1: &[usize], r2: &[usize]) -> bool {
    let s = |x: usize, y: usize| s[x * n + y];
    let r1 = |x: usize, y: usize| r1[x * n + y];
    let r2 = |x: usize, y: usize| r2[x * n + y];
    let pairs = (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
    let two = pairs.clone().all(|(x, y)| {
        x == r1(y, r2(x, y))
            && x == r2(r2(x, y), r1(x, y))
            && y == r2(r1(x, y), x)
            && y == r1(r2(x, y), r1(x, y))
            && r1(x, y) == r2(y, r2(x, y))
            && r2(x, y) == r1(r1(x, y), x)
            && r1(x, y) == r2(s(y, x), x)
            && r2(x, y) == s(r1(s(y, x), x), r2(s(y, x), x))
    });
    two && pairs.clone().all(|(x, y)| {
        (0..n).all(|z| {
            s(s(y, z), r2(x, z)) == s(s(y, x), r1(x, z))
                && s(r1(s(x, y), z), y) == r1(x, s(z, y))
                && r2(s(x, y), z) == s(r2(x, s(z, y)), y)
        })
    })
}

/// Filters every table triple of order `n`. Feasible for `n <= 3`.
pub fn naive_singquandles(n: usize) -> Vec<Triple> {
    let all: Vec<Vec<usize>> = (0..table_count(n)).map(|c| decode(n, c).concat()).collect();
    let unflat = |t: &[usize]| -> Table { t.chunks(n).map(|r| r.to_vec()).collect() };
    let stars: Vec<&Vec<usize>> = all
        .iter()
        .filter(|t| is_involutive_quandle(&unflat(t)))
        .collect();
    let mut out: Vec<Triple> = stars
        .iter()
        .flat_map(|star| {
            all.par_iter()
                .flat_map_iter(|r1| {
                    all.iter()
                        .filter(|r2| is_singquandle_flat(n, star, r1, r2))
                        .map(|r2| Triple {
                            star: unflat(star),
                            r1: unflat(r1),
                            r2: unflat(r2),
                        })
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort();
    out
}

/// Pairs `(t, b)` in `Z_n` for which the linear formulas satisfy every
/// identity, found by evaluating the tables rather than the congruences.
pub fn linear_params_by_tables(n: u64) -> Vec<(u64, u64)> {
    let mut out = vec![];
    for t in 0..n {
        for b in 0..n {
            let (s, r1, r2) = linear_tables(n, t, b);
            if is_involutive_quandle(&s) && is_singquandle(&s, &r1, &r2) {
                out.push((t, b));
            }
        }
    }
    out
}

pub fn linear_tables(n: u64, t: u64, b: u64) -> (Table, Table, Table) {
    let n_i = n as i64;
    let (t, b) = (t as i64, b as i64);
    let mk = |cx: i64, cy: i64| -> Table {
        (0..n_i)
            .map(|x| {
                (0..n_i)
                    .map(|y| (cx * x + cy * y).rem_euclid(n_i) as usize)
                    .collect()
            })
            .collect()
    };
    (mk(t, 1 - t), mk(1 - t - b, t + b), mk(1 - b, b))
}

/// Diagram as plain constraints: `(a, b, c)` means `c = a * b`,
/// `(a, b, c, d)` means `c = R1(a, b)`, `d = R2(a, b)`.
#[derive(Clone, Debug, Default)]
pub struct Constraints {
    pub arcs: usize,
    pub free: usize,
    pub classical: Vec<[usize; 3]>,
    pub singular: Vec<[usize; 4]>,
}

/// Every assignment of colors to arcs, checked one by one.
pub fn exhaustive_colorings(c: &Constraints, s: &Table, r1: &Table, r2: &Table) -> Vec<Vec<usize>> {
    let n = s.len();
    let mut out = vec![];
    let mut colors = vec![0; c.arcs];
    loop {
        let ok = c
            .classical
            .iter()
            .all(|&[a, b, o]| s[colors[a]][colors[b]] == colors[o])
            && c.singular.iter().all(|&[a, b, p, q]| {
                r1[colors[a]][colors[b]] == colors[p] && r2[colors[a]][colors[b]] == colors[q]
            });
        if ok {
            out.push(colors.clone());
        }
        let mut i = c.arcs;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            colors[i] += 1;
            if colors[i] < n {
                break;
            }
            colors[i] = 0;
        }
    }
}

/// Five-element tables with `R1 = R2`, given 1-indexed and shifted to `0..5`.
pub fn five_element_tables() -> (Table, Table) {
    let star = [
        [1, 3, 5, 2, 4],
        [5, 2, 4, 1, 3],
        [4, 1, 3, 5, 2],
        [3, 5, 2, 4, 1],
        [2, 4, 1, 3, 5],
    ];
    let prime = [
        [1, 4, 2, 5, 3],
        [4, 2, 5, 3, 1],
        [2, 5, 3, 1, 4],
        [5, 3, 1, 4, 2],
        [3, 1, 4, 2, 5],
    ];
    let shift = |t: [[usize; 5]; 5]| -> Table {
        t.iter()
            .map(|r| r.iter().map(|v| v - 1).collect())
            .collect()
    };
    (shift(star), shift(prime))
}
