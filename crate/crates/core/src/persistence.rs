//! Vietoris–Rips persistence in dimensions 0 and 1 over `Z/2`.
//!
//! A simplex enters the filtration at the largest pairwise distance among
//! its vertices. Within one grade, simplices are ordered lexicographically
//! by vertex tuple, which makes every reduction deterministic.
//!
//! Classes still alive at the threshold (the essential `H0` component and
//! any unfilled cycle) are reported with their death set to a finite cap,
//! so every output bar has finite length.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::barcode::Barcode;
use crate::matrix::DistanceMatrix;
use crate::{Error, Result};

/// Largest point count accepted by [`rips_h1`].
pub const MAX_H1_POINTS: usize = 2000;
/// Largest number of triangles [`rips_h1`] will materialize.
pub const MAX_TRIANGLES: usize = 50_000_000;

/// Disjoint-set forest with union by size and path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: alloc::vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the two sets; `false` if they were already one.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Homological dimension of a computed barcode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Zero,
    One,
}

/// Smallest radius at which some point reaches every other point:
/// `min_i max_j d(i, j)`. Past it the Rips complex is a cone.
pub fn enclosing_radius(dm: &DistanceMatrix) -> f64 {
    if dm.size() == 0 {
        return 0.0;
    }
    (0..dm.size()).map(|i| dm.row(i).iter().copied().fold(0.0, f64::max)).fold(f64::INFINITY, f64::min)
}

fn check_threshold(threshold: f64) -> Result<()> {
    if threshold.is_finite() && threshold > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidThreshold(threshold))
    }
}

#[derive(Debug, Clone, Copy)]
struct Edge {
    grade: f64,
    u: usize,
    v: usize,
}

fn filtration_edges(dm: &DistanceMatrix, threshold: f64) -> Vec<Edge> {
    let n = dm.size();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let grade = dm.get(u, v);
            if grade <= threshold {
                edges.push(Edge { grade, u, v });
            }
        }
    }
    edges.sort_by(|a, b| a.grade.total_cmp(&b.grade).then(a.u.cmp(&b.u)).then(a.v.cmp(&b.v)));
    edges
}

/// `H0` barcode with the essential bar capped at `threshold`.
pub fn rips_h0(dm: &DistanceMatrix, threshold: f64) -> Result<Barcode> {
    rips_h0_capped(dm, threshold, threshold)
}

/// `H0` barcode: every bar is born at 0 and dies at a single-linkage merge
/// height (Kruskal order); components alive at `threshold` die at `cap`.
pub fn rips_h0_capped(dm: &DistanceMatrix, threshold: f64, cap: f64) -> Result<Barcode> {
    check_threshold(threshold)?;
    check_threshold(cap)?;
    let n = dm.size();
    let mut forest = UnionFind::new(n);
    let mut bars = Vec::with_capacity(n);
    for e in filtration_edges(dm, threshold) {
        if forest.union(e.u, e.v) {
            bars.push((0.0, e.grade));
        }
    }
    let essential = n - bars.len();
    bars.extend(core::iter::repeat_n((0.0, cap), essential));
    Barcode::normalize(bars)
}

/// `H1` barcode with unfilled cycles capped at `threshold`.
pub fn rips_h1(dm: &DistanceMatrix, threshold: f64) -> Result<Barcode> {
    rips_h1_capped(dm, threshold, threshold)
}

/// `H1` barcode by column reduction of the graded boundary matrix `∂2`.
///
/// Cycle-creating edges are identified with a union-find pass over `∂1`.
/// Reduction stops as soon as every such edge is paired: any later
/// triangle column necessarily reduces to zero.
pub fn rips_h1_capped(dm: &DistanceMatrix, threshold: f64, cap: f64) -> Result<Barcode> {
    check_threshold(threshold)?;
    check_threshold(cap)?;
    let n = dm.size();
    if n > MAX_H1_POINTS {
        return Err(Error::SizeExceeded { size: n, limit: MAX_H1_POINTS });
    }
    let edges = filtration_edges(dm, threshold);
    let mut edge_index = alloc::vec![u32::MAX; n * n];
    for (k, e) in edges.iter().enumerate() {
        edge_index[e.u * n + e.v] = k as u32;
        edge_index[e.v * n + e.u] = k as u32;
    }

    let mut forest = UnionFind::new(n);
    let creates_cycle: Vec<bool> = edges.iter().map(|e| !forest.union(e.u, e.v)).collect();
    let cycle_edges = creates_cycle.iter().filter(|&&c| c).count();
    if cycle_edges == 0 {
        return Ok(Barcode::empty());
    }

    let triangles = filtration_triangles(dm, &edge_index)?;

    // reduced[e]: the reduced column whose lowest entry is edge e.
    let mut reduced: Vec<Option<Vec<u32>>> = alloc::vec![None; edges.len()];
    let mut death: Vec<Option<f64>> = alloc::vec![None; edges.len()];
    let mut paired = 0usize;
    let mut scratch = Vec::new();
    for tri in &triangles {
        if paired == cycle_edges {
            break;
        }
        let mut column: Vec<u32> = tri.boundary.to_vec();
        column.sort_unstable();
        while let Some(&low) = column.last() {
            match &reduced[low as usize] {
                Some(other) => {
                    symmetric_difference(&column, other, &mut scratch);
                    core::mem::swap(&mut column, &mut scratch);
                }
                None => break,
            }
        }
        if let Some(&low) = column.last() {
            death[low as usize] = Some(tri.grade);
            reduced[low as usize] = Some(column);
            paired += 1;
        }
    }

    let bars = edges.iter().zip(&creates_cycle).zip(&death).filter(|((_, &cycle), _)| cycle).map(|((e, _), d)| {
        let end = d.unwrap_or(cap).max(e.grade);
        (e.grade, end - e.grade)
    });
    Barcode::normalize(bars)
}

/// Persistence barcode of the requested dimension with essential classes capped at `cap`.
pub fn rips_barcode(dm: &DistanceMatrix, dim: Dimension, threshold: f64, cap: f64) -> Result<Barcode> {
    match dim {
        Dimension::Zero => rips_h0_capped(dm, threshold, cap),
        Dimension::One => rips_h1_capped(dm, threshold, cap),
    }
}

struct Triangle {
    grade: f64,
    vertices: [usize; 3],
    boundary: [u32; 3],
}

fn filtration_triangles(dm: &DistanceMatrix, edge_index: &[u32]) -> Result<Vec<Triangle>> {
    let n = dm.size();
    let mut triangles = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let ab = edge_index[a * n + b];
            if ab == u32::MAX {
                continue;
            }
            for c in (b + 1)..n {
                let (ac, bc) = (edge_index[a * n + c], edge_index[b * n + c]);
                if ac == u32::MAX || bc == u32::MAX {
                    continue;
                }
                if triangles.len() == MAX_TRIANGLES {
                    return Err(Error::SizeExceeded { size: MAX_TRIANGLES + 1, limit: MAX_TRIANGLES });
                }
                let grade = dm.get(a, b).max(dm.get(a, c)).max(dm.get(b, c));
                triangles.push(Triangle { grade, vertices: [a, b, c], boundary: [ab, ac, bc] });
            }
        }
    }
    triangles.sort_by(|s, t| match s.grade.total_cmp(&t.grade) {
        Ordering::Equal => s.vertices.cmp(&t.vertices),
        ord => ord,
    });
    Ok(triangles)
}

fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn line(points: &[f64]) -> DistanceMatrix {
        DistanceMatrix::from_fn(points.len(), |i, j| (points[i] - points[j]).abs()).unwrap()
    }

    fn bars(b: &Barcode) -> Vec<(f64, f64)> {
        b.iter().map(|i| (i.x, i.death())).collect()
    }

    #[test]
    fn h0_on_a_line() {
        let b = rips_h0(&line(&[0.0, 1.0, 3.0]), 10.0).unwrap();
        assert_eq!(bars(&b), vec![(0.0, 1.0), (0.0, 2.0), (0.0, 10.0)]);
    }

    #[test]
    fn h0_single_point_and_cap() {
        let b = rips_h0(&line(&[0.0]), 4.0).unwrap();
        assert_eq!(bars(&b), vec![(0.0, 4.0)]);
        let b = rips_h0(&line(&[0.0, 2.0]), 1.0).unwrap();
        assert_eq!(bars(&b), vec![(0.0, 1.0), (0.0, 1.0)]);
    }

    #[test]
    fn h0_duplicate_points_give_no_zero_bars() {
        let b = rips_h0(&line(&[0.0, 0.0, 1.0]), 5.0).unwrap();
        assert_eq!(bars(&b), vec![(0.0, 1.0), (0.0, 5.0)]);
    }

    #[test]
    fn rejects_bad_threshold() {
        let dm = line(&[0.0, 1.0]);
        assert_eq!(rips_h0(&dm, 0.0), Err(Error::InvalidThreshold(0.0)));
        assert!(rips_h1(&dm, f64::NAN).is_err());
    }

    #[test]
    fn enclosing_radius_examples() {
        assert_eq!(enclosing_radius(&line(&[0.0, 2.0])), 2.0);
        assert_eq!(enclosing_radius(&line(&[0.0, 1.0, 3.0])), 2.0);
        assert_eq!(enclosing_radius(&line(&[5.0])), 0.0);
    }

    #[test]
    fn unit_square_has_one_loop() {
        let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        let dm = DistanceMatrix::from_fn(4, |i, j| {
            let (a, b): ((f64, f64), (f64, f64)) = (pts[i], pts[j]);
            libm::hypot(a.0 - b.0, a.1 - b.1)
        })
        .unwrap();
        let b = rips_h1(&dm, 2.0).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.intervals()[0].x, 1.0);
        assert!((b.intervals()[0].death() - core::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn triangles_fill_immediately() {
        let dm = DistanceMatrix::new(3, vec![0., 1., 2., 1., 0., 1.5, 2., 1.5, 0.]).unwrap();
        assert!(rips_h1(&dm, 5.0).unwrap().is_empty());
    }

    #[test]
    fn unfilled_cycle_is_capped() {
        // Square with threshold below the diagonal: the loop never fills.
        let dm =
            DistanceMatrix::new(4, vec![0., 1., 1.5, 1., 1., 0., 1., 1.5, 1.5, 1., 0., 1., 1., 1.5, 1., 0.]).unwrap();
        let b = rips_h1_capped(&dm, 1.2, 3.0).unwrap();
        assert_eq!(bars(&b), vec![(1.0, 3.0)]);
    }

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(4);
        assert!(uf.union(0, 1));
        assert!(uf.union(2, 3));
        assert!(!uf.union(1, 0));
        assert!(uf.union(1, 3));
        assert_eq!(uf.find(0), uf.find(2));
    }
}
