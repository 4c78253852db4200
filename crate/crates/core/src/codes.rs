//! Linear codes whose parity-check matrix has the points of a set as columns.
//!
//! A set of `N` points spanning PG(n, q) gives an `[N, N - n - 1, d]_q` code
//! where `d` is the least number of linearly dependent columns; the set is
//! `k`-general exactly when `d >= k + 1`.

use std::sync::Arc;

use crate::field::SmallField;
use crate::geometry::{Matrix, PointSet};
use crate::verify::{Search, VerifyOptions};
use crate::{Error, Result};

/// Parity-check matrix over GF(q), one column per point.
#[derive(Clone, Debug)]
pub struct CheckMatrix {
    field: Arc<SmallField>,
    matrix: Matrix,
}

impl CheckMatrix {
    /// Checks that no column is zero and no two columns are proportional.
    pub fn new(field: Arc<SmallField>, matrix: Matrix) -> Result<Self> {
        let cols: Vec<Vec<u8>> = (0..matrix.cols()).map(|c| matrix.column(c)).collect();
        let mut seen = std::collections::HashSet::new();
        for (j, c) in cols.iter().enumerate() {
            let mut v = c.clone();
            if !crate::geometry::normalize(&field, &mut v) {
                return Err(Error::InvalidArgument(format!("column {j} is zero")));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidArgument(format!("column {j} is proportional to an earlier column")));
            }
        }
        Ok(CheckMatrix { field, matrix })
    }

    pub fn field(&self) -> &Arc<SmallField> {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Code length.
    pub fn length(&self) -> usize {
        self.matrix.cols()
    }

    /// Code dimension, `length - rank`.
    pub fn dimension(&self) -> usize {
        self.length() - self.matrix.rank(&self.field)
    }

    /// The columns as a point set of PG(rows - 1, q).
    pub fn to_point_set(&self, label: &str) -> Result<PointSet> {
        let cols = (0..self.matrix.cols()).map(|c| self.matrix.column(c));
        PointSet::from_vectors(self.field.clone(), self.matrix.rows() - 1, label, cols)
    }
}

/// The check matrix of a spanning point set.
pub fn export_check_matrix(set: &PointSet) -> Result<CheckMatrix> {
    let rank = set.rank();
    if rank != set.ambient_dim() + 1 {
        return Err(Error::NotSpanning { rank, need: set.ambient_dim() + 1 });
    }
    let rows: Vec<Vec<u8>> = set.points().iter().map(|p| p.coords().to_vec()).collect();
    let matrix = Matrix::from_rows(&rows)?.transpose();
    CheckMatrix::new(set.field().clone(), matrix)
}

/// Least number of linearly dependent columns, found by scanning column
/// subsets of increasing size.
pub fn min_distance(h: &CheckMatrix, opts: &VerifyOptions) -> Result<usize> {
    let rank = h.matrix.rank(&h.field);
    if rank == h.length() {
        return Err(Error::ZeroDimensionalCode);
    }
    let cols: Vec<Vec<u8>> = (0..h.length()).map(|c| h.matrix.column(c)).collect();
    for d in 1..=rank + 1 {
        let search = Search {
            field: &h.field,
            rows: &cols,
            k: d,
            threshold: d - 1,
            prefix: Vec::new(),
            pool: (0..cols.len()).collect(),
            census: false,
            filter: None,
            budget: opts.budget,
        };
        if search.size() > opts.budget as u128 {
            return Err(Error::BudgetExceeded { needed: search.size(), budget: opts.budget });
        }
        if search.run()?.witness.is_some() {
            return Ok(d);
        }
    }
    Err(Error::Internal("rank + 1 columns are always dependent".into()))
}

/// Generator matrix `[I_6 | A]` of the ternary extended Golay code.
/// The code is self-dual, so this is also a parity-check matrix.
pub fn ternary_golay_check_matrix() -> Result<CheckMatrix> {
    const A: [[u8; 6]; 6] = [
        [0, 1, 1, 1, 1, 1],
        [1, 0, 1, 2, 2, 1],
        [1, 1, 0, 1, 2, 2],
        [1, 2, 1, 0, 1, 2],
        [1, 2, 2, 1, 0, 1],
        [1, 1, 2, 2, 1, 0],
    ];
    let rows: Vec<Vec<u8>> = (0..6)
        .map(|i| {
            let mut r = vec![0u8; 12];
            r[i] = 1;
            r[6..].copy_from_slice(&A[i]);
            r
        })
        .collect();
    CheckMatrix::new(SmallField::new(3)?, Matrix::from_rows(&rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::dot;

    #[test]
    fn golay_code_is_self_dual_with_distance_6() {
        let h = ternary_golay_check_matrix().unwrap();
        let f = h.field().clone();
        let m = h.matrix();
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(dot(&f, m.row(i), m.row(j)), 0);
            }
        }
        assert_eq!(h.dimension(), 6);
        // independent oracle: minimum weight over all 3^12 words of the kernel
        let mut best = usize::MAX;
        for code in 1..3u32.pow(12) {
            let mut c = code;
            let w: Vec<u8> = (0..12)
                .map(|_| {
                    let d = (c % 3) as u8;
                    c /= 3;
                    d
                })
                .collect();
            if m.apply(&f, &w).iter().all(|&x| x == 0) {
                best = best.min(w.iter().filter(|&&x| x != 0).count());
            }
        }
        assert_eq!(best, 6);
        assert_eq!(min_distance(&h, &VerifyOptions::default()).unwrap(), 6);
    }

    #[test]
    fn proportional_columns_are_rejected() {
        let f = SmallField::new(3).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2, 0], vec![1, 2, 1]]).unwrap();
        assert!(CheckMatrix::new(f.clone(), m).is_err());
        let z = Matrix::from_rows(&[vec![1, 0], vec![0, 0]]).unwrap();
        assert!(CheckMatrix::new(f, z).is_err());
    }

    #[test]
    fn smallest_frame_gives_the_repetition_code() {
        let f = SmallField::new(2).unwrap();
        let set = PointSet::from_vectors(f, 1, "frame", [vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let h = export_check_matrix(&set).unwrap();
        assert_eq!((h.matrix().rows(), h.matrix().cols()), (2, 3));
        assert_eq!(min_distance(&h, &VerifyOptions::default()).unwrap(), 3);
    }

    #[test]
    fn non_spanning_and_zero_dimensional_inputs() {
        let f = SmallField::new(2).unwrap();
        let line = PointSet::from_vectors(f.clone(), 2, "l", [vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(matches!(export_check_matrix(&line), Err(Error::NotSpanning { .. })));
        let basis = PointSet::from_vectors(f, 1, "b", [vec![1, 0], vec![0, 1]]).unwrap();
        let h = export_check_matrix(&basis).unwrap();
        assert!(matches!(min_distance(&h, &VerifyOptions::default()), Err(Error::ZeroDimensionalCode)));
    }
}
