//! Dense matrices over a [`SmallField`].

use serde::{Deserialize, Serialize};

use crate::field::SmallField;
use crate::{Error, Result};

/// Row-major matrix of GF(q) codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Block diagonal matrix with the given square or rectangular blocks.
    pub fn block_diag(blocks: &[Matrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(r0 + i, c0 + j, b.get(i, j));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, f: &SmallField, v: &[u8]) -> Vec<u8> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| dot(f, self.row(r), v))
            .collect()
    }

    pub fn mul(&self, f: &SmallField, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument("dimension mismatch in product".into()));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0u8;
                for k in 0..self.cols {
                    acc = f.add(acc, f.mul(self.get(r, k), other.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn rank(&self, f: &SmallField) -> usize {
        self.rref(f).1.len()
    }

    pub fn is_invertible(&self, f: &SmallField) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// `Some(c)` if the matrix is `c` times the identity with `c != 0`.
    pub fn scalar_value(&self) -> Option<u8> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0);
        if c == 0 {
            return None;
        }
        for r in 0..self.rows {
            for k in 0..self.cols {
                let want = if r == k { c } else { 0 };
                if self.get(r, k) != want {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, f: &SmallField) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = f.inv(m.get(row, col));
            for c in 0..m.cols {
                let v = f.mul(inv, m.get(row, c));
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                let factor = m.get(r, col);
                if r != row && factor != 0 {
                    for c in 0..m.cols {
                        let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Basis of the right kernel `{v : M v = 0}`, in reduced row echelon form.
    pub fn nullspace(&self, f: &SmallField) -> Vec<Vec<u8>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis: Vec<Vec<u8>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0u8; self.cols];
                v[fc] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(i, fc));
                }
                v
            })
            .collect();
        if basis.is_empty() {
            return basis;
        }
        let (echelon, piv) = Matrix::from_rows(&basis).expect("uniform rows").rref(f);
        basis = (0..piv.len()).map(|i| echelon.row(i).to_vec()).collect();
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

#[inline]
pub fn dot(f: &SmallField, a: &[u8], b: &[u8]) -> u8 {
    a.iter().zip(b).fold(0u8, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Rank of a list of equal-length vectors by plain Gaussian elimination.
pub fn rank_of_rows(f: &SmallField, rows: &[&[u8]]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let owned: Vec<Vec<u8>> = rows.iter().map(|r| r.to_vec()).collect();
    Matrix::from_rows(&owned).map_or(0, |m| m.rank(f))
}
