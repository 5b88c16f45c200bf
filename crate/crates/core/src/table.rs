use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// A square table of element indices, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Table {
    n: usize,
    cells: Vec<usize>,
}

impl Table {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(f(x, y));
            }
        }
        Table { n, cells }
    }

    pub fn from_cells(n: usize, cells: Vec<usize>) -> Self {
        assert_eq!(cells.len(), n * n, "table needs n*n cells");
        Table { n, cells }
    }

    /// Builds a table from nested rows, rejecting ragged input and entries `>= n`.
    pub fn from_rows(rows: &[Vec<usize>], what: &str) -> Result<Self> {
        let n = rows.len();
        let mut cells = Vec::with_capacity(n * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Format(format!(
                    "{what}: row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::Format(format!(
                        "{what}: entry [{x}][{y}] = {v} out of range for size {n}"
                    )));
                }
                cells.push(v);
            }
        }
        Ok(Table { n, cells })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    pub fn set(&mut self, x: usize, y: usize, v: usize) {
        self.cells[x * self.n + y] = v;
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.n.max(1)).take(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Table {
        Table::from_fn(self.n, |x, y| self.get(y, x))
    }
}

impl Index<(usize, usize)> for Table {
    type Output = usize;

    fn index(&self, (x, y): (usize, usize)) -> &usize {
        &self.cells[x * self.n + y]
    }
}

impl IndexMut<(usize, usize)> for Table {
    fn index_mut(&mut self, (x, y): (usize, usize)) -> &mut usize {
        &mut self.cells[x * self.n + y]
    }
}
