#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropix_core::{Barcode, DistanceMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bars with coordinates on the grid `k / 4`, exact in binary floating point.
pub fn rational_bars(rng: &mut impl Rng, max_bars: usize) -> Vec<(f64, f64)> {
    let count = rng.gen_range(0..=max_bars);
    (0..count).map(|_| (rng.gen_range(0..=16) as f64 / 4.0, rng.gen_range(1..=16) as f64 / 4.0)).collect()
}

pub fn rational_barcode(rng: &mut impl Rng, max_bars: usize) -> Barcode {
    Barcode::normalize(rational_bars(rng, max_bars)).unwrap()
}

/// Bars on the unit scale with continuous coordinates.
pub fn unit_barcode(rng: &mut impl Rng, max_bars: usize) -> Barcode {
    let count = rng.gen_range(0..=max_bars);
    Barcode::normalize((0..count).map(|_| (rng.gen::<f64>(), rng.gen_range(0.01..1.0)))).unwrap()
}

pub fn shuffled_with_zero_bars(rng: &mut impl Rng, bars: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut raw = bars.to_vec();
    for _ in 0..rng.gen_range(0..4) {
        raw.push((rng.gen_range(0..=16) as f64 / 4.0, 0.0));
    }
    raw.shuffle(rng);
    raw
}

pub fn euclidean_matrix(points: &[Vec<f64>]) -> DistanceMatrix {
    DistanceMatrix::from_fn(points.len(), |i, j| {
        points[i].iter().zip(&points[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    })
    .unwrap()
}

pub fn random_points(rng: &mut impl Rng, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect()).collect()
}

pub fn circle(n: usize, radius: f64) -> DistanceMatrix {
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            vec![radius * t.cos(), radius * t.sin()]
        })
        .collect();
    euclidean_matrix(&pts)
}

pub fn unit_square() -> DistanceMatrix {
    euclidean_matrix(&[vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]])
}
