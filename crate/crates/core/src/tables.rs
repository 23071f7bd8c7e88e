//! Total operation tables over a finite universe, indexed by element position.

use crate::error::{Error, Result};

/// A total unary operation given by position: `map[x]` is the image of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnaryTable {
    map: Vec<usize>,
}

impl UnaryTable {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        if let Some(&v) = map.iter().find(|&&v| v >= n) {
            return Err(Error::UnknownName(format!("position {v}")));
        }
        Ok(UnaryTable { map })
    }

    pub fn identity(n: usize) -> Self {
        UnaryTable { map: (0..n).collect() }
    }

    pub fn constant(n: usize, c: usize) -> Self {
        UnaryTable { map: vec![c; n] }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.map
    }

    /// Conjugate by a permutation: the table of the same operation after the
    /// universe is renumbered by `perm` (old position `i` becomes `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.map.len();
        let mut out = vec![0; n];
        for x in 0..n {
            out[perm[x]] = perm[self.map[x]];
        }
        UnaryTable { map: out }
    }
}

/// A total binary operation as a row-major square table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryTable {
    n: usize,
    cells: Vec<usize>,
}

impl BinaryTable {
    pub fn new(n: usize, cells: Vec<usize>) -> Result<Self> {
        if cells.len() != n * n {
            return Err(Error::ValidationError {
                axiom: "table size".into(),
                witness: format!("{} cells for universe of {n}", cells.len()),
            });
        }
        if let Some(&v) = cells.iter().find(|&&v| v >= n) {
            return Err(Error::UnknownName(format!("position {v}")));
        }
        Ok(BinaryTable { n, cells })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> usize) -> Self {
        let mut cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                cells.push(f(x, y));
            }
        }
        BinaryTable { n, cells }
    }

    pub fn apply(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.n + y]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.n;
        let mut out = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                out[perm[x] * n + perm[y]] = perm[self.cells[x * n + y]];
            }
        }
        BinaryTable { n, cells: out }
    }
}
