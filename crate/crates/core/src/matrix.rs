use alloc::vec::Vec;

use crate::{Error, MatrixDefect, Result};

/// Largest `|a_ij - a_ji|` tolerated when building a [`DistanceMatrix`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

/// Dense symmetric matrix of nonnegative distances with zero diagonal,
/// stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    /// Validates a row-major `size x size` matrix.
    ///
    /// Deviations from symmetry up to [`SYMMETRY_TOLERANCE`] are accepted
    /// and resolved by copying the lower triangle over the upper one.
    pub fn new(size: usize, mut entries: Vec<f64>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::InvalidMatrix(MatrixDefect::Shape { size, entries: entries.len() }));
        }
        let mut worst = (0usize, 0usize, 0.0f64);
        for row in 0..size {
            for col in 0..size {
                let value = entries[row * size + col];
                if !value.is_finite() {
                    return Err(Error::InvalidMatrix(MatrixDefect::NonFinite { row, col }));
                }
                if value < 0.0 {
                    return Err(Error::InvalidMatrix(MatrixDefect::Negative { row, col, value }));
                }
                if row == col && value != 0.0 {
                    return Err(Error::InvalidMatrix(MatrixDefect::NonzeroDiagonal { index: row, value }));
                }
                if col < row {
                    let deviation = (value - entries[col * size + row]).abs();
                    if deviation > worst.2 {
                        worst = (row, col, deviation);
                    }
                }
            }
        }
        if worst.2 > SYMMETRY_TOLERANCE {
            let (row, col, deviation) = worst;
            return Err(Error::InvalidMatrix(MatrixDefect::Asymmetric { row, col, deviation }));
        }
        for row in 0..size {
            for col in 0..row {
                entries[col * size + row] = entries[row * size + col];
            }
        }
        // -0.0 on the diagonal would otherwise leak into output.
        for i in 0..size {
            entries[i * size + i] = 0.0;
        }
        Ok(DistanceMatrix { size, entries })
    }

    /// Builds a matrix from a function evaluated on the strict lower triangle.
    pub fn from_fn<F>(size: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> f64,
    {
        let mut entries = alloc::vec![0.0; size * size];
        for i in 0..size {
            for j in 0..i {
                let v = f(i, j);
                entries[i * size + j] = v;
                entries[j * size + i] = v;
            }
        }
        DistanceMatrix::new(size, entries)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Submatrix on the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> DistanceMatrix {
        let size = indices.len();
        let mut entries = Vec::with_capacity(size * size);
        for &i in indices {
            for &j in indices {
                entries.push(self.get(i, j));
            }
        }
        DistanceMatrix { size, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn accepts_valid() {
        let m = DistanceMatrix::new(3, vec![0., 1., 3., 1., 0., 2., 3., 2., 0.]).unwrap();
        assert_eq!(m.get(0, 2), 3.0);
        assert_eq!(m.row(1), &[1.0, 0.0, 2.0]);
    }

    #[test]
    fn rejects_asymmetry_beyond_tolerance() {
        let err = DistanceMatrix::new(2, vec![0., 1., 1.5, 0.]).unwrap_err();
        match err {
            Error::InvalidMatrix(MatrixDefect::Asymmetric { deviation, .. }) => {
                assert_eq!(deviation, 0.5)
            }
            other => panic!("unexpected {other:?}"),
        }
        let m = DistanceMatrix::new(2, vec![0., 1.0, 1.0 + 1e-12, 0.]).unwrap();
        assert_eq!(m.get(0, 1), m.get(1, 0));
    }

    #[test]
    fn rejects_defects() {
        assert!(matches!(
            DistanceMatrix::new(2, vec![0., 1., 1.]),
            Err(Error::InvalidMatrix(MatrixDefect::Shape { .. }))
        ));
        assert!(matches!(
            DistanceMatrix::new(2, vec![0., -1., -1., 0.]),
            Err(Error::InvalidMatrix(MatrixDefect::Negative { .. }))
        ));
        assert!(matches!(
            DistanceMatrix::new(2, vec![0.5, 1., 1., 0.]),
            Err(Error::InvalidMatrix(MatrixDefect::NonzeroDiagonal { index: 0, .. }))
        ));
        assert!(matches!(
            DistanceMatrix::new(2, vec![0., f64::NAN, f64::NAN, 0.]),
            Err(Error::InvalidMatrix(MatrixDefect::NonFinite { .. }))
        ));
    }
}
