use std::fmt;

use crate::error::{Error, Result};

/// An element of a finite structure, `0 <= c < n` for the ambient order `n`.
pub type Color = usize;

/// An `n x n` operation table over the colors `0..n`.
///
/// The entry at row `x`, column `y` is `op(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpTable {
    order: usize,
    entries: Vec<Color>,
}

impl OpTable {
    /// Builds a table from row-major entries, checking shape and range.
    pub fn from_rows(rows: Vec<Vec<Color>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut entries = Vec::with_capacity(order * order);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::OrderMismatch(order, row.len()));
            }
            for (y, v) in row.into_iter().enumerate() {
                if v >= order {
                    return Err(Error::EntryOutOfRange {
                        row: x,
                        col: y,
                        value: v,
                        order,
                    });
                }
                entries.push(v);
            }
        }
        Ok(OpTable { order, entries })
    }

    /// Tabulates `f` over all pairs. Values are reduced modulo the order.
    pub fn from_fn(order: usize, mut f: impl FnMut(Color, Color) -> Color) -> Result<Self> {
        if order == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut entries = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                entries.push(f(x, y) % order);
            }
        }
        Ok(OpTable { order, entries })
    }

    pub(crate) fn from_flat(order: usize, entries: Vec<Color>) -> Self {
        debug_assert_eq!(entries.len(), order * order);
        OpTable { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, x: Color, y: Color) -> Color {
        self.entries[x * self.order + y]
    }

    pub fn row(&self, x: Color) -> &[Color] {
        &self.entries[x * self.order..(x + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Color]> {
        self.entries.chunks(self.order)
    }

    /// Column `y` read top to bottom: the right multiplication `x -> op(x, y)`.
    pub fn column(&self, y: Color) -> Vec<Color> {
        (0..self.order).map(|x| self.get(x, y)).collect()
    }

    pub fn entries(&self) -> &[Color] {
        &self.entries
    }

    /// The table obtained by renaming every color `c` to `perm[c]`.
    pub fn relabel(&self, perm: &[Color]) -> OpTable {
        let n = self.order;
        let mut entries = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                entries[perm[x] * n + perm[y]] = perm[self.get(x, y)];
            }
        }
        OpTable { order: n, entries }
    }
}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// Rows separated by newlines, entries by single spaces.
impl fmt::Display for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let mut first = true;
            for v in row {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}
