use proptest::prelude::*;
use tropix_core::{Barcode, Interval, RegularizedSpec};

fn raw_bars() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.0f64..50.0, prop_oneof![Just(0.0), 0.0f64..10.0]), 0..12)
}

proptest! {
    #[test]
    fn normalize_is_idempotent(bars in raw_bars()) {
        let b = Barcode::normalize(bars).unwrap();
        let again = Barcode::from_intervals(b.intervals().iter().copied()).unwrap();
        prop_assert_eq!(&again, &b);
    }

    #[test]
    fn canonical_order_and_no_zero_bars(bars in raw_bars()) {
        let b = Barcode::normalize(bars.clone()).unwrap();
        prop_assert!(b.iter().all(|bar| bar.d > 0.0));
        prop_assert_eq!(b.len(), bars.iter().filter(|(_, d)| *d > 0.0).count());
        for w in b.intervals().windows(2) {
            prop_assert!((w[0].x, w[0].d) <= (w[1].x, w[1].d));
        }
    }

    #[test]
    fn reversal_gives_same_barcode(bars in raw_bars()) {
        let mut reversed = bars.clone();
        reversed.reverse();
        prop_assert_eq!(Barcode::normalize(bars).unwrap(), Barcode::normalize(reversed).unwrap());
    }

    #[test]
    fn padding_appends_zero_bars(bars in raw_bars(), extra in 0usize..5) {
        let b = Barcode::normalize(bars).unwrap();
        let padded = b.pad(b.len() + extra).unwrap();
        prop_assert_eq!(padded.len(), b.len() + extra);
        prop_assert!(padded[b.len()..].iter().all(|bar| bar.d == 0.0));
        if !b.is_empty() {
            prop_assert!(b.pad(b.len() - 1).is_err());
        }
    }
}

#[test]
fn rejects_invalid_bars() {
    assert!(Barcode::normalize([(-1.0, 1.0)]).is_err());
    assert!(Barcode::normalize([(1.0, -1.0)]).is_err());
    assert!(Barcode::normalize([(f64::NAN, 1.0)]).is_err());
    assert!(Barcode::normalize([(1.0, f64::INFINITY)]).is_err());
}

#[test]
fn regularized_membership() {
    let b = Barcode::normalize([(3.0, 1.0), (0.0, 2.0)]).unwrap();
    assert!(b.validate(&RegularizedSpec::new(2, 3.0).unwrap()));
    assert!(!b.validate(&RegularizedSpec::new(2, 2.0).unwrap()));
    assert!(!b.validate(&RegularizedSpec::new(1, 3.0).unwrap()));
    assert!(RegularizedSpec::new(2, 0.0).is_err());
    assert_eq!(Interval::from_birth_death(1.0, 4.0), Interval::new(1.0, 3.0));
}
