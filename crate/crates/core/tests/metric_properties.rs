mod common;

use tropix_core::metrics::{
    bottleneck, bottleneck_bruteforce, pairwise_matrix, wasserstein, wasserstein_bruteforce, Metric,
};
use tropix_core::Barcode;

use common::*;

#[test]
fn solvers_match_exhaustive_enumeration() {
    let mut rng = rng(21);
    for _ in 0..1_000 {
        let (a, b) = (unit_barcode(&mut rng, 4), unit_barcode(&mut rng, 4));
        let brute = bottleneck_bruteforce(&a, &b).unwrap();
        assert!((bottleneck(&a, &b) - brute).abs() <= 1e-9, "{a:?} {b:?}");
        for p in [1.0, 2.0] {
            let brute = wasserstein_bruteforce(&a, &b, p).unwrap();
            let fast = wasserstein(&a, &b, p).unwrap();
            assert!((fast - brute).abs() <= 1e-9, "p={p} {fast} vs {brute}");
        }
    }
}

#[test]
fn solvers_match_enumeration_with_ties() {
    // Grid values produce many equal candidate costs.
    let mut rng = rng(22);
    for _ in 0..500 {
        let (a, b) = (rational_barcode(&mut rng, 4), rational_barcode(&mut rng, 4));
        assert_eq!(bottleneck(&a, &b), bottleneck_bruteforce(&a, &b).unwrap());
        let w = wasserstein(&a, &b, 1.0).unwrap();
        assert!((w - wasserstein_bruteforce(&a, &b, 1.0).unwrap()).abs() <= 1e-9);
    }
}

#[test]
fn metric_axioms() {
    let mut rng = rng(23);
    for _ in 0..300 {
        let bs: Vec<Barcode> = (0..3).map(|_| unit_barcode(&mut rng, 6)).collect();
        let metrics = [Metric::Bottleneck, Metric::Wasserstein(1.0), Metric::Wasserstein(2.0)];
        for metric in metrics {
            let d = |i: usize, j: usize| metric.distance(&bs[i], &bs[j]).unwrap();
            assert_eq!(d(0, 1).to_bits(), d(1, 0).to_bits(), "{metric:?} symmetry");
            assert_eq!(d(0, 0), 0.0);
            if bs[0] != bs[1] {
                assert!(d(0, 1) > 0.0);
            }
            assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-9, "{metric:?} triangle");
        }
    }
}

#[test]
fn wasserstein_decreases_toward_bottleneck() {
    let mut rng = rng(24);
    let mut worst_gap: f64 = 0.0;
    for _ in 0..200 {
        let (a, b) = (unit_barcode(&mut rng, 4), unit_barcode(&mut rng, 4));
        let ws: Vec<f64> = [1.0, 2.0, 4.0, 8.0, 16.0].iter().map(|&p| wasserstein(&a, &b, p).unwrap()).collect();
        for pair in ws.windows(2) {
            assert!(pair[1] <= pair[0] + 1e-12, "{ws:?}");
        }
        let bn = bottleneck(&a, &b);
        assert!(ws[4] >= bn - 1e-12);
        worst_gap = worst_gap.max(ws[4] - bn);
        assert!(ws[4] - bn <= 0.05, "W16 {} vs bottleneck {bn}", ws[4]);
    }
    println!("largest W16 - bottleneck gap: {worst_gap:.5}");
}

#[test]
fn single_bar_against_empty_is_constant() {
    for x in [0.0, 1.0, 10.0, 100.0, 1e6] {
        let bx = Barcode::normalize([(x, 1.0)]).unwrap();
        assert_eq!(bottleneck(&Barcode::empty(), &bx), 0.5);
        for p in [1.0, 2.0, 3.0] {
            assert!((wasserstein(&Barcode::empty(), &bx, p).unwrap() - 0.5).abs() < 1e-15);
        }
    }
}

#[test]
fn pairwise_matrix_is_a_metric_matrix() {
    let mut rng = rng(25);
    let bs: Vec<Barcode> = (0..5).map(|_| unit_barcode(&mut rng, 5)).collect();
    for metric in [Metric::Bottleneck, Metric::Wasserstein(2.0)] {
        let m = pairwise_matrix(&bs, metric).unwrap();
        for i in 0..5 {
            assert_eq!(m.get(i, i), 0.0);
            for j in 0..5 {
                assert_eq!(m.get(i, j), m.get(j, i));
                for k in 0..5 {
                    assert!(m.get(i, k) <= m.get(i, j) + m.get(j, k) + 1e-9);
                }
            }
        }
    }
    assert!(pairwise_matrix(&bs, Metric::Wasserstein(0.5)).is_err());
}

#[test]
fn bottleneck_handles_larger_inputs() {
    let mut rng = rng(26);
    let a = unit_barcode(&mut rng, 60);
    let b = unit_barcode(&mut rng, 60);
    let d = bottleneck(&a, &b);
    let w = wasserstein(&a, &b, 16.0).unwrap();
    assert!(d > 0.0 && w >= d - 1e-12);
}
