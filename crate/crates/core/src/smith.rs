//! Smith-style diagonalization of integer matrices.
//!
//! Two routes share one elimination kernel built from unimodular Bezout steps:
//!
//! * [`Matrix::invariant_factors`] works over the integers and returns the
//!   Smith normal form diagonal `d_1 | d_2 | ... | d_r`.
//! * [`Matrix::diagonal_mod`] reduces every entry modulo `n` after each step.
//!   The result is a diagonal form over `Z_n` (no divisibility chain), which
//!   is all that solution counting needs, with entries bounded by `n`.
//!
//! Both are generic over the integer scalar.

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T>
where
    T: Integer + Signed + Clone,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut T {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Smith normal form diagonal over the integers: the nonzero invariant
    /// factors, positive and in divisibility order.
    pub fn invariant_factors(&self) -> Vec<T> {
        let mut m = self.clone();
        let mut diag = m.diagonalize(None);
        diag.retain(|d| !d.is_zero());
        // (a, b) -> (gcd, lcm) until the chain divides
        for i in 0..diag.len() {
            for j in i + 1..diag.len() {
                let (a, b) = (diag[i].clone(), diag[j].clone());
                if !b.is_multiple_of(&a) {
                    diag[i] = a.gcd(&b);
                    diag[j] = a.lcm(&b);
                }
            }
        }
        diag
    }

    /// Diagonal form with all arithmetic in `Z_n`; one entry per row/column
    /// pair up to `min(rows, cols)`, each in `[0, n)`.
    pub fn diagonal_mod(&self, n: &T) -> Vec<T> {
        let mut m = self.clone();
        for e in &mut m.data {
            *e = e.mod_floor(n);
        }
        m.diagonalize(Some(n))
    }

    fn normalize(v: T, modulus: Option<&T>) -> T {
        match modulus {
            Some(n) => v.mod_floor(n),
            None => v,
        }
    }

    /// In-place elimination; returns the diagonal (length `min(rows, cols)`).
    fn diagonalize(&mut self, modulus: Option<&T>) -> Vec<T> {
        let steps = self.rows.min(self.cols);
        let mut diag = Vec::with_capacity(steps);
        for k in 0..steps {
            let Some((pi, pj)) = self.find_pivot(k) else {
                diag.extend(std::iter::repeat_n(T::zero(), steps - k));
                break;
            };
            self.swap_rows(k, pi);
            self.swap_cols(k, pj);
            loop {
                let mut dirty = false;
                for i in k + 1..self.rows {
                    if !self.get(i, k).is_zero() {
                        dirty |= self.clear_row_entry(k, i, modulus);
                    }
                }
                for j in k + 1..self.cols {
                    if !self.get(k, j).is_zero() {
                        dirty |= self.clear_col_entry(k, j, modulus);
                    }
                }
                if !dirty {
                    break;
                }
            }
            let p = self.get(k, k).clone();
            diag.push(if modulus.is_some() { p } else { p.abs() });
        }
        diag
    }

    fn find_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.rows {
            for j in k..self.cols {
                let v = self.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.get(bi, bj).abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Zeroes entry `(i, k)` using row `k`. Returns true when the pivot changed
    /// (which may refill row `k`).
    fn clear_row_entry(&mut self, k: usize, i: usize, modulus: Option<&T>) -> bool {
        let p = self.get(k, k).clone();
        let e = self.get(i, k).clone();
        if e.is_multiple_of(&p) {
            let q = e.div_floor(&p);
            for j in k..self.cols {
                let v = self.get(i, j).clone() - q.clone() * self.get(k, j).clone();
                *self.get_mut(i, j) = Self::normalize(v, modulus);
            }
            return false;
        }
        let g = p.extended_gcd(&e);
        let (s, t) = (g.x, g.y);
        let (pg, eg) = (p / g.gcd.clone(), e / g.gcd);
        for j in k..self.cols {
            let a = self.get(k, j).clone();
            let b = self.get(i, j).clone();
            let top = s.clone() * a.clone() + t.clone() * b.clone();
            let bottom = pg.clone() * b - eg.clone() * a;
            *self.get_mut(k, j) = Self::normalize(top, modulus);
            *self.get_mut(i, j) = Self::normalize(bottom, modulus);
        }
        true
    }

    /// Column analogue of [`Self::clear_row_entry`].
    fn clear_col_entry(&mut self, k: usize, j: usize, modulus: Option<&T>) -> bool {
        let p = self.get(k, k).clone();
        let e = self.get(k, j).clone();
        if e.is_multiple_of(&p) {
            let q = e.div_floor(&p);
            for i in k..self.rows {
                let v = self.get(i, j).clone() - q.clone() * self.get(i, k).clone();
                *self.get_mut(i, j) = Self::normalize(v, modulus);
            }
            return false;
        }
        let g = p.extended_gcd(&e);
        let (s, t) = (g.x, g.y);
        let (pg, eg) = (p / g.gcd.clone(), e / g.gcd);
        for i in k..self.rows {
            let a = self.get(i, k).clone();
            let b = self.get(i, j).clone();
            let left = s.clone() * a.clone() + t.clone() * b.clone();
            let right = pg.clone() * b - eg.clone() * a;
            *self.get_mut(i, k) = Self::normalize(left, modulus);
            *self.get_mut(i, j) = Self::normalize(right, modulus);
        }
        true
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl<T> Matrix<T>
where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive,
{
    /// Number of `x` in `Z_n^cols` with `A x = 0 (mod n)`:
    /// the product of `gcd(d_i, n)` over the diagonal, times `n` for every
    /// column without a pivot. `None` on `u128` overflow.
    pub fn kernel_size_mod(&self, n: u64) -> Option<u128> {
        let nt = T::from_u64(n).expect("modulus fits the scalar");
        let diag = self.diagonal_mod(&nt);
        let mut count: u128 = 1;
        for j in 0..self.cols {
            let g = match diag.get(j) {
                Some(d) => d.gcd(&nt),
                None => nt.clone(),
            };
            count = count.checked_mul(g.to_u128()?)?;
        }
        Some(count)
    }

    /// Same count via the integer Smith form: `n^(cols - r) * prod gcd(d_i, n)`.
    pub fn kernel_size_mod_integer(&self, n: u64) -> Option<u128> {
        let nt = T::from_u64(n).expect("modulus fits the scalar");
        let factors = self.invariant_factors();
        let mut count: u128 = 1;
        for d in &factors {
            count = count.checked_mul(d.gcd(&nt).to_u128()?)?;
        }
        for _ in factors.len()..self.cols {
            count = count.checked_mul(n as u128)?;
        }
        Some(count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Matrix<i64> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect(), cols)
    }

    #[test]
    fn known_smith_forms() {
        assert_eq!(
            mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]).invariant_factors(),
            vec![2, 6, 12]
        );
        assert_eq!(mat(&[&[6, 4], &[4, 6]]).invariant_factors(), vec![2, 10]);
        assert_eq!(
            mat(&[&[0, 0], &[0, 0]]).invariant_factors(),
            Vec::<i64>::new()
        );
        assert_eq!(mat(&[&[3]]).invariant_factors(), vec![3]);
        assert_eq!(
            Matrix::<i64>::zeros(0, 3).invariant_factors(),
            Vec::<i64>::new()
        );
    }

    #[test]
    fn kernel_counts_small() {
        // 6z = 0 mod 10 has 2 solutions
        assert_eq!(mat(&[&[6]]).kernel_size_mod(10), Some(2));
        assert_eq!(mat(&[&[6]]).kernel_size_mod_integer(10), Some(2));
        // no rows: everything is a solution
        assert_eq!(Matrix::<i64>::zeros(0, 3).kernel_size_mod(4), Some(64));
        assert_eq!(Matrix::<i64>::zeros(2, 2).kernel_size_mod(5), Some(25));
    }

    fn brute_kernel(rows: &[Vec<i64>], cols: usize, n: u64) -> u128 {
        let n = n as i64;
        let mut x = vec![0i64; cols];
        let mut count = 0;
        loop {
            if rows.iter().all(|r| {
                r.iter()
                    .zip(&x)
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
                    .rem_euclid(n)
                    == 0
            }) {
                count += 1;
            }
            let mut k = cols;
            loop {
                if k == 0 {
                    return count;
                }
                k -= 1;
                x[k] += 1;
                if x[k] < n {
                    break;
                }
                x[k] = 0;
            }
        }
    }

    fn det(m: &[Vec<BigInt>]) -> BigInt {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut acc = BigInt::from(0);
        for j in 0..m.len() {
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = m[0][j].clone() * det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    /// gcd of all k x k minors: the k-th determinantal divisor.
    fn determinantal_divisor(rows: &[Vec<i64>], k: usize) -> BigInt {
        use itertools::Itertools;
        let cols = rows[0].len();
        let mut g = BigInt::from(0);
        for ri in (0..rows.len()).combinations(k) {
            for ci in (0..cols).combinations(k) {
                let sub: Vec<Vec<BigInt>> = ri
                    .iter()
                    .map(|&i| ci.iter().map(|&j| BigInt::from(rows[i][j])).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        g
    }

    proptest! {
        #[test]
        fn invariant_factors_match_determinantal_divisors(
            rows in prop::collection::vec(prop::collection::vec(-9i64..10, 3), 1..4)
        ) {
            let m = Matrix::from_rows(rows.clone(), 3);
            let f: Vec<BigInt> = Matrix::from_rows(
                rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(), 3
            ).invariant_factors();
            let fi = m.invariant_factors();
            prop_assert_eq!(f.len(), fi.len());
            let mut prod = BigInt::from(1);
            for k in 1..=rows.len().min(3) {
                let dk = determinantal_divisor(&rows, k);
                if dk == BigInt::from(0) {
                    prop_assert!(f.len() < k);
                    break;
                }
                prod *= f[k - 1].clone();
                prop_assert_eq!(&prod, &dk);
                prop_assert_eq!(BigInt::from(fi[k - 1]), f[k - 1].clone());
            }
            for w in f.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }

        #[test]
        fn kernel_routes_agree_with_brute_force(
            rows in prop::collection::vec(prop::collection::vec(0i64..12, 3), 0..4),
            n in 1u64..9,
        ) {
            let m = Matrix::from_rows(rows.clone(), 3);
            let expected = brute_kernel(&rows, 3, n);
            prop_assert_eq!(m.kernel_size_mod(n), Some(expected));
            prop_assert_eq!(m.kernel_size_mod_integer(n), Some(expected));
            let wide: Matrix<i128> = Matrix::from_rows(
                rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect(), 3);
            prop_assert_eq!(wide.kernel_size_mod(n), Some(expected));
        }
    }
}
