//! Classical constructors and the rack / quandle / involutive / connected predicates.

use crate::error::{Error, Result};
use crate::table::{Color, OpTable};

/// `x * y = x`.
pub fn trivial(n: usize) -> Result<OpTable> {
    OpTable::from_fn(n, |x, _| x)
}

/// `a * b = 2b - a (mod n)`, the reflection quandle of the regular n-gon.
pub fn dihedral(n: usize) -> Result<OpTable> {
    OpTable::from_fn(n, |a, b| (2 * b + n - a) % n)
}

/// First column `y` whose right multiplication is not injective, as `(y, x1, x2)`
/// with `x1 < x2` and `x1 * y = x2 * y`.
pub(crate) fn non_bijective_column(t: &OpTable) -> Option<[Color; 3]> {
    let n = t.order();
    let mut seen = vec![usize::MAX; n];
    for y in 0..n {
        seen.iter_mut().for_each(|s| *s = usize::MAX);
        for x in 0..n {
            let v = t.get(x, y);
            if seen[v] != usize::MAX {
                return Some([y, seen[v], x]);
            }
            seen[v] = x;
        }
    }
    None
}

/// First `(x, y, z)` with `(x*y)*z != (x*z)*(y*z)`.
pub(crate) fn distributivity_failure(t: &OpTable) -> Option<[Color; 3]> {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            let xy = t.get(x, y);
            for z in 0..n {
                if t.get(xy, z) != t.get(t.get(x, z), t.get(y, z)) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

pub(crate) fn idempotency_failure(t: &OpTable) -> Option<Color> {
    (0..t.order()).find(|&x| t.get(x, x) != x)
}

pub(crate) fn involutivity_failure(t: &OpTable) -> Option<[Color; 2]> {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            if t.get(t.get(x, y), y) != x {
                return Some([x, y]);
            }
        }
    }
    None
}

/// Every right multiplication is a bijection and `*` is right self-distributive.
pub fn is_rack(t: &OpTable) -> bool {
    non_bijective_column(t).is_none() && distributivity_failure(t).is_none()
}

pub fn is_quandle(t: &OpTable) -> bool {
    idempotency_failure(t).is_none() && is_rack(t)
}

/// `(x*y)*y = x` for all `x, y`.
pub fn is_involutive(t: &OpTable) -> bool {
    involutivity_failure(t).is_none()
}

/// Whether the inner group (generated by the column permutations) acts
/// transitively. Only defined for quandles.
pub fn is_connected(t: &OpTable) -> Result<bool> {
    if !is_quandle(t) {
        return Err(Error::NotQuandle);
    }
    Ok(orbit(t, 0).len() == t.order())
}

/// Orbit of `start` under all right multiplications. In a finite group the
/// forward closure already contains the inverses.
pub fn orbit(t: &OpTable, start: Color) -> Vec<Color> {
    let n = t.order();
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(x) = stack.pop() {
        for y in 0..n {
            let v = t.get(x, y);
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    (0..n).filter(|&c| seen[c]).collect()
}
