//! Bottleneck and Wasserstein distances between barcodes.
//!
//! Partial bijections are turned into perfect matchings by augmentation:
//! with `a = |b1|` and `b = |b2|`, rows are the bars of `b1` followed by `b`
//! diagonal slots, columns are the bars of `b2` followed by `a` diagonal
//! slots. A bar matched to a diagonal slot is unmatched and pays `d / 2`;
//! two diagonal slots match for free.

use alloc::vec::Vec;

use crate::assignment;
use crate::barcode::{Barcode, Interval};
use crate::matching::BipartiteGraph;
use crate::matrix::DistanceMatrix;
use crate::{Error, Result};

/// Largest Wasserstein exponent accepted; `p`-th powers stay well inside `f64`.
pub const MAX_P: f64 = 16.0;

/// Largest `|b1| + |b2|` the brute-force oracles accept.
pub const BRUTEFORCE_MAX_BARS: usize = 8;

/// `d_inf` between two bars: `max(|x_a - x_b|, |d_a - d_b + x_a - x_b|)`.
///
/// The second term is the difference of deaths, so this is the sup-norm
/// distance between `(birth, death)` points.
pub fn interval_dist(a: &Interval, b: &Interval) -> f64 {
    let dx = a.x - b.x;
    let dd = a.d - b.d;
    dx.abs().max((dd + dx).abs())
}

/// Distance from a bar to the diagonal, `d / 2`.
pub fn diagonal_dist(a: &Interval) -> f64 {
    a.d / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    Bottleneck,
    Wasserstein(f64),
}

impl Metric {
    pub fn distance(&self, b1: &Barcode, b2: &Barcode) -> Result<f64> {
        match *self {
            Metric::Bottleneck => Ok(bottleneck(b1, b2)),
            Metric::Wasserstein(p) => wasserstein(b1, b2, p),
        }
    }

    pub fn check(&self) -> Result<()> {
        match *self {
            Metric::Bottleneck => Ok(()),
            Metric::Wasserstein(p) => check_p(p),
        }
    }
}

fn check_p(p: f64) -> Result<()> {
    if (1.0..=MAX_P).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidP(p))
    }
}

/// Bottleneck distance: binary search over the finite set of candidate costs,
/// testing each with a perfect-matching feasibility check.
pub fn bottleneck(b1: &Barcode, b2: &Barcode) -> f64 {
    let (a, b) = (b1.intervals(), b2.intervals());
    if a.is_empty() && b.is_empty() {
        return 0.0;
    }
    // Sending everything to the diagonal is always feasible.
    let upper = a.iter().chain(b).map(diagonal_dist).fold(0.0, f64::max);
    let mut candidates: Vec<f64> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| interval_dist(x, y)))
        .chain(a.iter().chain(b).map(diagonal_dist))
        .chain(core::iter::once(0.0))
        .filter(|&c| c <= upper)
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let (mut lo, mut hi) = (0usize, candidates.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if perfect_within(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

fn perfect_within(a: &[Interval], b: &[Interval], radius: f64) -> bool {
    let size = a.len() + b.len();
    let mut graph = BipartiteGraph::new(size, size);
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if interval_dist(x, y) <= radius {
                graph.add_edge(i, j);
            }
        }
        if diagonal_dist(x) <= radius {
            graph.add_edge(i, b.len() + i);
        }
    }
    for (j, y) in b.iter().enumerate() {
        let row = a.len() + j;
        if diagonal_dist(y) <= radius {
            graph.add_edge(row, j);
        }
        for k in 0..a.len() {
            graph.add_edge(row, b.len() + k);
        }
    }
    graph.max_matching() == size
}

/// Wasserstein `p`-distance, `1 <= p <= 16`, by optimal assignment on the
/// augmented cost matrix.
pub fn wasserstein(b1: &Barcode, b2: &Barcode, p: f64) -> Result<f64> {
    check_p(p)?;
    // Fixed argument order makes the result exactly symmetric.
    let (b1, b2) = if order_key(b1, b2) { (b2, b1) } else { (b1, b2) };
    let (a, b) = (b1.intervals(), b2.intervals());
    let k = a.len() + b.len();
    if k == 0 {
        return Ok(0.0);
    }
    let pow = |c: f64| libm::pow(c, p);
    let mut costs = alloc::vec![0.0; k * k];
    for (i, x) in a.iter().enumerate() {
        let row = &mut costs[i * k..(i + 1) * k];
        for (j, y) in b.iter().enumerate() {
            row[j] = pow(interval_dist(x, y));
        }
        // Any diagonal slot will do; they are interchangeable.
        let diag = pow(diagonal_dist(x));
        row[b.len()..].iter_mut().for_each(|c| *c = diag);
    }
    for (j, y) in b.iter().enumerate() {
        let diag = pow(diagonal_dist(y));
        for r in a.len()..k {
            costs[r * k + j] = diag;
        }
    }
    let assign = assignment::solve(k, &costs);
    let mut paid: Vec<f64> = assign.iter().enumerate().map(|(r, &c)| costs[r * k + c]).collect();
    paid.sort_by(f64::total_cmp);
    let total: f64 = paid.iter().sum();
    Ok(libm::pow(total, 1.0 / p))
}

fn order_key(b1: &Barcode, b2: &Barcode) -> bool {
    let key = |b: &Barcode| b.iter().map(|i| (i.x, i.d)).collect::<Vec<_>>();
    let (k1, k2) = (key(b1), key(b2));
    for (x, y) in k1.iter().zip(&k2) {
        match x.0.total_cmp(&y.0).then(x.1.total_cmp(&y.1)) {
            core::cmp::Ordering::Equal => continue,
            ord => return ord.is_gt(),
        }
    }
    k1.len() > k2.len()
}

/// Enumerates every partial bijection `A' -> B'` and calls `visit` with the
/// list of costs it pays (matched pairs and unmatched bars alike).
fn for_each_partial_bijection<F: FnMut(&[f64])>(a: &[Interval], b: &[Interval], mut visit: F) -> Result<()> {
    let size = a.len() + b.len();
    if size > BRUTEFORCE_MAX_BARS {
        return Err(Error::OracleSizeExceeded { size, limit: BRUTEFORCE_MAX_BARS });
    }
    fn go<F: FnMut(&[f64])>(
        i: usize,
        a: &[Interval],
        b: &[Interval],
        used: &mut [bool],
        paid: &mut Vec<f64>,
        visit: &mut F,
    ) {
        if i == a.len() {
            let before = paid.len();
            for (j, y) in b.iter().enumerate() {
                if !used[j] {
                    paid.push(diagonal_dist(y));
                }
            }
            visit(paid);
            paid.truncate(before);
            return;
        }
        paid.push(diagonal_dist(&a[i]));
        go(i + 1, a, b, used, paid, visit);
        paid.pop();
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                paid.push(interval_dist(&a[i], &b[j]));
                go(i + 1, a, b, used, paid, visit);
                paid.pop();
                used[j] = false;
            }
        }
    }
    let mut used = alloc::vec![false; b.len()];
    let mut paid = Vec::with_capacity(size);
    go(0, a, b, &mut used, &mut paid, &mut visit);
    Ok(())
}

/// Exhaustive bottleneck distance for `|b1| + |b2| <= 8`.
pub fn bottleneck_bruteforce(b1: &Barcode, b2: &Barcode) -> Result<f64> {
    let mut best = f64::INFINITY;
    for_each_partial_bijection(b1.intervals(), b2.intervals(), |paid| {
        best = best.min(paid.iter().copied().fold(0.0, f64::max));
    })?;
    Ok(best)
}

/// Exhaustive Wasserstein distance for `|b1| + |b2| <= 8`.
pub fn wasserstein_bruteforce(b1: &Barcode, b2: &Barcode, p: f64) -> Result<f64> {
    check_p(p)?;
    let mut best = f64::INFINITY;
    for_each_partial_bijection(b1.intervals(), b2.intervals(), |paid| {
        let total: f64 = paid.iter().map(|&c| libm::pow(c, p)).sum();
        best = best.min(total);
    })?;
    Ok(libm::pow(best, 1.0 / p))
}

/// Pairwise distances between all barcodes, computed on the lower triangle and mirrored.
pub fn pairwise_matrix(barcodes: &[Barcode], metric: Metric) -> Result<DistanceMatrix> {
    metric.check()?;
    let n = barcodes.len();
    let mut entries = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in 0..i {
            let d = metric.distance(&barcodes[i], &barcodes[j])?;
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    DistanceMatrix::new(n, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(bars: &[(f64, f64)]) -> Barcode {
        Barcode::normalize(bars.iter().copied()).unwrap()
    }

    #[test]
    fn interval_distance_examples() {
        let d = |a: (f64, f64), b: (f64, f64)| interval_dist(&Interval::new(a.0, a.1), &Interval::new(b.0, b.1));
        assert_eq!(d((1.0, 2.0), (1.0, 3.0)), 1.0);
        assert_eq!(d((4.5, 2.0), (4.5, 2.0)), 0.0);
        assert_eq!(d((0.0, 1.0), (2.0, 1.0)), 2.0);
    }

    #[test]
    fn diagonal_distance_examples() {
        assert_eq!(diagonal_dist(&Interval::new(3.0, 1.0)), 0.5);
        assert_eq!(diagonal_dist(&Interval::new(3.0, 0.0)), 0.0);
        assert_eq!(diagonal_dist(&Interval::new(0.0, 4.0)), 2.0);
    }

    #[test]
    fn bottleneck_examples() {
        let b1 = bc(&[(1.0, 2.0), (3.0, 1.0)]);
        let b2 = bc(&[(2.0, 2.0)]);
        assert_eq!(bottleneck(&b1, &b1), 0.0);
        assert_eq!(bottleneck(&bc(&[(1.0, 2.0)]), &Barcode::empty()), 1.0);
        assert_eq!(bottleneck(&b1, &b2), 1.0);
        assert_eq!(bottleneck_bruteforce(&b1, &b2).unwrap(), 1.0);
        assert_eq!(bottleneck(&Barcode::empty(), &Barcode::empty()), 0.0);
    }

    #[test]
    fn wasserstein_examples() {
        let b = bc(&[(1.0, 2.0), (3.0, 1.0)]);
        assert_eq!(wasserstein(&b, &b, 2.0).unwrap(), 0.0);
        let w = wasserstein(&bc(&[(1.0, 2.0)]), &bc(&[(1.0, 3.0)]), 1.0).unwrap();
        assert_eq!(w, 1.0);
        let w = wasserstein(&bc(&[(0.0, 2.0)]), &Barcode::empty(), 2.0).unwrap();
        assert_eq!(w, 1.0);
        assert_eq!(wasserstein(&b, &b, 0.5), Err(Error::InvalidP(0.5)));
        assert_eq!(wasserstein(&b, &b, 17.0), Err(Error::InvalidP(17.0)));
    }

    #[test]
    fn oracle_refuses_large_inputs() {
        let big = bc(&[(0.0, 1.0), (1.0, 1.0), (2.0, 1.0), (3.0, 1.0), (4.0, 1.0)]);
        assert!(matches!(bottleneck_bruteforce(&big, &big), Err(Error::OracleSizeExceeded { size: 10, limit: 8 })));
    }

    #[test]
    fn pairwise_examples() {
        let b = bc(&[(1.0, 1.0)]);
        let m = pairwise_matrix(&[b.clone(), b], Metric::Bottleneck).unwrap();
        assert_eq!(m.entries(), &[0.0; 4]);
        let m = pairwise_matrix(&[bc(&[(1.0, 2.0), (3.0, 1.0)]), bc(&[(2.0, 2.0)])], Metric::Bottleneck).unwrap();
        assert_eq!(m.get(0, 1), 1.0);
        assert_eq!(m.get(1, 0), 1.0);
    }

    #[test]
    fn diagonal_projection_is_constant_in_birth() {
        for x in [0.0, 1.0, 10.0, 100.0, 12345.5] {
            assert_eq!(bottleneck(&Barcode::empty(), &bc(&[(x, 1.0)])), 0.5);
        }
    }
}
