//! Linear singquandles over `Z_n`.
//!
//! For `t, b` in `Z_n` with `t^2 = 1`, `b(1 + t) = 0` and `t = (1 - b)^2`,
//!
//! ```text
//! x * y    = t x + (1 - t) y
//! R1(x, y) = (1 - t - b) x + (t + b) y
//! R2(x, y) = (1 - b) x + b y
//! ```
//!
//! is an involutive singquandle. [`verify_proposition`] confirms this
//! exhaustively for a given parameter set.

use std::fmt;

use rayon::prelude::*;

use crate::axioms::{AxiomReport, Singquandle};
use crate::error::{Error, Result};
use crate::table::OpTable;

/// Residues `(t, b)` modulo `n`, normalized into `[0, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlexanderParams {
    pub n: u64,
    pub t: u64,
    pub b: u64,
}

fn reduce(v: i128, n: u64) -> u64 {
    v.rem_euclid(n as i128) as u64
}

impl AlexanderParams {
    /// Validates the three defining congruences. `t` and `b` may be given as
    /// any integers; `t = -1` is stored as `n - 1`.
    pub fn new(n: u64, t: i64, b: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let p = AlexanderParams {
            n,
            t: reduce(t as i128, n),
            b: reduce(b as i128, n),
        };
        match p.violation() {
            None => Ok(p),
            Some(violated) => Err(Error::InvalidParams {
                n: p.n,
                t: p.t,
                b: p.b,
                violated,
            }),
        }
    }

    /// The first defining congruence that fails, if any.
    fn violation(&self) -> Option<&'static str> {
        let (n, t, b) = (self.n as i128, self.t as i128, self.b as i128);
        if (t * t - 1).rem_euclid(n) != 0 {
            Some("t^2 - 1")
        } else if (b * (1 + t)).rem_euclid(n) != 0 {
            Some("b(1 + t)")
        } else if (t - (1 - b) * (1 - b)).rem_euclid(n) != 0 {
            Some("t - (1 - b)^2")
        } else {
            None
        }
    }

    pub fn linear_ops(&self) -> LinearOps {
        let (n, t, b) = (self.n, self.t as i128, self.b as i128);
        LinearOps {
            n,
            star: (reduce(t, n), reduce(1 - t, n)),
            r1: (reduce(1 - t - b, n), reduce(t + b, n)),
            r2: (reduce(1 - b, n), reduce(b, n)),
        }
    }
}

impl fmt::Display for AlexanderParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.n, self.t, self.b)
    }
}

/// Coefficient pairs `(c_x, c_y)` with `op(x, y) = c_x x + c_y y (mod n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinearOps {
    pub n: u64,
    pub star: (u64, u64),
    pub r1: (u64, u64),
    pub r2: (u64, u64),
}

impl LinearOps {
    pub fn eval(&self, coeffs: (u64, u64), x: u64, y: u64) -> u64 {
        let n = self.n as u128;
        ((coeffs.0 as u128 * x as u128 + coeffs.1 as u128 * y as u128) % n) as u64
    }

    fn table(&self, coeffs: (u64, u64)) -> OpTable {
        OpTable::from_fn(self.n as usize, |x, y| {
            self.eval(coeffs, x as u64, y as u64) as usize
        })
        .expect("n >= 1")
    }
}

/// All valid `(t, b)` for modulus `n`, sorted by `(t, b)`.
pub fn find_params(n: u64) -> Vec<AlexanderParams> {
    if n == 0 {
        return vec![];
    }
    let mut out: Vec<AlexanderParams> = (0..n)
        .into_par_iter()
        .flat_map_iter(|t| {
            (0..n).filter_map(move |b| AlexanderParams::new(n, t as i64, b as i64).ok())
        })
        .collect();
    out.sort();
    out
}

/// Tabulates the three operations.
pub fn build_tables(p: &AlexanderParams) -> Result<Singquandle> {
    // re-validate: the fields are public
    let p = AlexanderParams::new(p.n, p.t as i64, p.b as i64)?;
    let ops = p.linear_ops();
    Singquandle::new(ops.table(ops.star), ops.table(ops.r1), ops.table(ops.r2))
}

/// Runs the full checker on the tabulated structure.
pub fn verify_proposition(p: &AlexanderParams) -> Result<AxiomReport> {
    Ok(build_tables(p)?.verify())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(n: u64) -> Vec<(u64, u64)> {
        find_params(n).into_iter().map(|p| (p.t, p.b)).collect()
    }

    #[test]
    fn params_mod_5() {
        // brute force over all 25 pairs, independent of `new`
        let mut oracle = vec![];
        for t in 0..5i64 {
            for b in 0..5i64 {
                let ok = (t * t - 1).rem_euclid(5) == 0
                    && (b * (1 + t)).rem_euclid(5) == 0
                    && (t - (1 - b).pow(2)).rem_euclid(5) == 0;
                if ok {
                    oracle.push((t as u64, b as u64));
                }
            }
        }
        assert_eq!(oracle, vec![(1, 0), (4, 3), (4, 4)]);
        assert_eq!(pairs(5), oracle);
    }

    #[test]
    fn params_mod_10_and_identity() {
        assert!(pairs(10).contains(&(9, 4)));
        for n in 2..=12 {
            assert!(pairs(n).contains(&(1, 0)), "n={n}");
        }
        assert_eq!(pairs(1), vec![(0, 0)]);
    }

    #[test]
    fn negative_residues_normalize() {
        let p = AlexanderParams::new(10, -1, 4).unwrap();
        assert_eq!((p.t, p.b), (9, 4));
    }

    #[test]
    fn invalid_params_name_the_congruence() {
        let e = AlexanderParams::new(5, 2, 1).unwrap_err();
        assert!(matches!(
            e,
            Error::InvalidParams {
                violated: "t^2 - 1",
                ..
            }
        ));
        let e = AlexanderParams::new(5, 1, 1).unwrap_err();
        assert!(matches!(
            e,
            Error::InvalidParams {
                violated: "b(1 + t)",
                ..
            }
        ));
        let e = AlexanderParams::new(5, 4, 0).unwrap_err();
        assert!(matches!(
            e,
            Error::InvalidParams {
                violated: "t - (1 - b)^2",
                ..
            }
        ));
        assert_eq!(AlexanderParams::new(0, 0, 0), Err(Error::ZeroOrder));
        let bad = AlexanderParams { n: 5, t: 2, b: 1 };
        assert!(build_tables(&bad).is_err());
    }

    #[test]
    fn tables_5_4_3() {
        let s = build_tables(&AlexanderParams::new(5, 4, 3).unwrap()).unwrap();
        for x in 0..5 {
            for y in 0..5 {
                assert_eq!(s.star().get(x, y), (4 * x + 2 * y) % 5);
                assert_eq!(s.r1().get(x, y), (4 * x + 2 * y) % 5);
                assert_eq!(s.r2().get(x, y), (3 * x + 3 * y) % 5);
            }
        }
        assert_eq!(s.star().row(0), &[0, 2, 4, 1, 3]);
    }

    #[test]
    fn tables_trivial_params() {
        for n in 1..=6 {
            let s = build_tables(&AlexanderParams::new(n, 1, 0).unwrap()).unwrap();
            let n = n as usize;
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(s.star().get(x, y), x);
                    assert_eq!(s.r1().get(x, y), y);
                    assert_eq!(s.r2().get(x, y), x);
                }
            }
        }
    }

    #[test]
    fn tables_4_1_2() {
        let p = AlexanderParams::new(4, 1, 2).unwrap();
        let s = build_tables(&p).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(s.star().get(x, y), x);
                assert_eq!(s.r1().get(x, y), (2 * x + 3 * y) % 4);
                assert_eq!(s.r2().get(x, y), (3 * x + 2 * y) % 4);
            }
        }
        assert!(verify_proposition(&p).unwrap().all_pass());
    }

    #[test]
    fn linear_structures_from_known_parameters_verify() {
        for (n, t, b) in [(5, 4, 3), (10, 9, 4), (4, 1, 2)] {
            let rep = verify_proposition(&AlexanderParams::new(n, t, b).unwrap()).unwrap();
            assert!(rep.all_pass(), "{n} {t} {b}:\n{rep}");
        }
    }

    #[test]
    fn diagonal_is_fixed_and_linear_forms_agree() {
        for n in 1..=12 {
            for p in find_params(n) {
                let s = build_tables(&p).unwrap();
                let ops = p.linear_ops();
                for x in 0..n as usize {
                    assert_eq!(s.star().get(x, x), x);
                    assert_eq!(s.r1().get(x, x), x);
                    assert_eq!(s.r2().get(x, x), x);
                    for y in 0..n as usize {
                        let (xu, yu) = (x as u64, y as u64);
                        assert_eq!(s.r1().get(x, y) as u64, ops.eval(ops.r1, xu, yu));
                        assert_eq!(s.r2().get(x, y) as u64, ops.eval(ops.r2, xu, yu));
                        assert_eq!(s.star().get(x, y) as u64, ops.eval(ops.star, xu, yu));
                    }
                }
            }
        }
    }

    #[test]
    fn odd_primes_have_unique_companion_for_t_one() {
        for n in [3u64, 5, 7, 11] {
            let with_t1: Vec<_> = pairs(n).into_iter().filter(|&(t, _)| t == 1).collect();
            assert_eq!(with_t1, vec![(1, 0)]);
        }
    }
}
