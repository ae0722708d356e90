//! Two-dimensional projections: classical (metric) MDS of a distance matrix
//! and PCA of tropical vectors.

use alloc::vec::Vec;

use crate::linalg::jacobi_eigen;
use crate::matrix::DistanceMatrix;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionResult {
    pub coordinates: Vec<[f64; 2]>,
    /// Share of the total positive spectrum carried by each axis.
    pub explained: [f64; 2],
    /// Most negative eigenvalue that was clipped to zero, if any was
    /// significant (non-Euclidean input to MDS).
    pub clipped_eigenvalue: Option<f64>,
}

/// Classical MDS: eigendecomposition of `-1/2 J D^2 J`, keeping the top two axes.
pub fn classical_mds(dm: &DistanceMatrix) -> Result<ProjectionResult> {
    let n = dm.size();
    if n < 2 {
        return Err(Error::TooFewObservations { found: n, needed: 2 });
    }
    if dm.entries().iter().all(|&d| d == 0.0) {
        return Err(Error::DegenerateInput);
    }
    let sq: Vec<f64> = dm.entries().iter().map(|d| d * d).collect();
    let row_mean: Vec<f64> = (0..n).map(|i| sq[i * n..(i + 1) * n].iter().sum::<f64>() / n as f64).collect();
    let grand = row_mean.iter().sum::<f64>() / n as f64;
    let mut b = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            b[i * n + j] = -0.5 * (sq[i * n + j] - row_mean[i] - row_mean[j] + grand);
        }
    }
    let eig = jacobi_eigen(n, &b);
    let top = eig.values[0].max(0.0);
    let lowest = eig.values[n - 1];
    let clipped_eigenvalue = (lowest < -1e-9 * top.max(1.0)).then_some(lowest);

    let positive: f64 = eig.values.iter().filter(|&&v| v > 0.0).sum();
    let axis = |k: usize| if k < n { eig.values[k].max(0.0) } else { 0.0 };
    let explained = [share(axis(0), positive), share(axis(1), positive)];
    let scale = [libm::sqrt(axis(0)), libm::sqrt(axis(1))];
    let coordinates = (0..n)
        .map(|i| {
            let c = |k: usize| if k < n { eig.vectors[i * n + k] * scale[k] } else { 0.0 };
            [c(0), c(1)]
        })
        .collect();
    Ok(ProjectionResult { coordinates, explained, clipped_eigenvalue })
}

fn share(v: f64, total: f64) -> f64 {
    if total > 0.0 {
        v / total
    } else {
        0.0
    }
}

/// PCA on mean-centered vectors, keeping the top two principal axes.
///
/// When vectors outnumber their dimension the covariance matrix is
/// diagonalized; otherwise the (smaller) Gram matrix of the centered data,
/// which has the same nonzero spectrum.
pub fn pca<S: AsRef<[f64]>>(vectors: &[S]) -> Result<ProjectionResult> {
    let n = vectors.len();
    if n < 3 {
        return Err(Error::TooFewObservations { found: n, needed: 3 });
    }
    let dim = vectors[0].as_ref().len();
    if let Some(bad) = vectors.iter().find(|v| v.as_ref().len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.as_ref().len() });
    }
    let mut mean = alloc::vec![0.0; dim];
    for v in vectors {
        for (m, x) in mean.iter_mut().zip(v.as_ref()) {
            *m += x;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n as f64);
    let centered: Vec<f64> = vectors.iter().flat_map(|v| v.as_ref().iter().zip(&mean).map(|(x, m)| x - m)).collect();
    let denom = (n - 1) as f64;
    let at = |i: usize, k: usize| centered[i * dim + k];

    let (values, coordinates) = if dim <= n {
        let mut cov = alloc::vec![0.0; dim * dim];
        for p in 0..dim {
            for q in p..dim {
                let c = (0..n).map(|i| at(i, p) * at(i, q)).sum::<f64>() / denom;
                cov[p * dim + q] = c;
                cov[q * dim + p] = c;
            }
        }
        let eig = jacobi_eigen(dim, &cov);
        let coords = (0..n)
            .map(|i| {
                let c = |k: usize| {
                    if k < dim {
                        (0..dim).map(|p| at(i, p) * eig.vectors[p * dim + k]).sum()
                    } else {
                        0.0
                    }
                };
                [c(0), c(1)]
            })
            .collect::<Vec<_>>();
        (eig.values, coords)
    } else {
        let mut gram = alloc::vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let g = (0..dim).map(|k| at(i, k) * at(j, k)).sum::<f64>() / denom;
                gram[i * n + j] = g;
                gram[j * n + i] = g;
            }
        }
        let eig = jacobi_eigen(n, &gram);
        let coords = (0..n)
            .map(|i| {
                let c = |k: usize| eig.vectors[i * n + k] * libm::sqrt(denom * eig.values[k].max(0.0));
                [c(0), c(1)]
            })
            .collect::<Vec<_>>();
        (eig.values, coords)
    };
    let total: f64 = values.iter().map(|v| v.max(0.0)).sum();
    let axis = |k: usize| values.get(k).copied().unwrap_or(0.0).max(0.0);
    Ok(ProjectionResult {
        coordinates,
        explained: [share(axis(0), total), share(axis(1), total)],
        clipped_eigenvalue: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
        libm::hypot(a[0] - b[0], a[1] - b[1])
    }

    #[test]
    fn two_points() {
        let dm = DistanceMatrix::new(2, vec![0.0, 2.0, 2.0, 0.0]).unwrap();
        let r = classical_mds(&dm).unwrap();
        let (a, b) = (r.coordinates[0], r.coordinates[1]);
        assert!((a[0].abs() - 1.0).abs() < 1e-12 && (b[0].abs() - 1.0).abs() < 1e-12);
        assert!((a[0] + b[0]).abs() < 1e-12);
        assert!(a[1].abs() < 1e-12 && b[1].abs() < 1e-12);
    }

    #[test]
    fn recovers_planar_configuration() {
        let pts = [[0.0, 0.0], [3.0, 0.0], [0.0, 4.0], [1.0, 1.0], [-2.0, 0.5]];
        let dm = DistanceMatrix::from_fn(pts.len(), |i, j| dist(pts[i], pts[j])).unwrap();
        let r = classical_mds(&dm).unwrap();
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                let d = dist(r.coordinates[i], r.coordinates[j]);
                assert!((d - dm.get(i, j)).abs() < 1e-6);
            }
        }
        assert!(r.clipped_eigenvalue.is_none());
        assert!((r.explained[0] + r.explained[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mds_rejects_degenerate() {
        let dm = DistanceMatrix::new(3, vec![0.0; 9]).unwrap();
        assert_eq!(classical_mds(&dm), Err(Error::DegenerateInput));
    }

    #[test]
    fn pca_rank_one() {
        let dir = [1.0, -2.0, 0.5, 3.0, 1.0];
        let vectors: Vec<Vec<f64>> =
            [0.0, 1.0, 2.5, -1.0].iter().map(|t| dir.iter().map(|d| 7.0 + t * d).collect()).collect();
        let r = pca(&vectors).unwrap();
        assert!(r.explained[1] <= 1e-9);
        assert!((r.explained[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn pca_errors() {
        assert!(matches!(pca(&[vec![1.0], vec![2.0]]), Err(Error::TooFewObservations { .. })));
        assert!(matches!(pca(&[vec![1.0, 2.0], vec![2.0], vec![3.0, 1.0]]), Err(Error::DimensionMismatch { .. })));
    }
}
