//! Barcodes as points of the quotient space: finite multisets of bars
//! `(x, d)` (birth, length) modulo bar order and modulo zero-length bars.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::hash::{Hash, Hasher};

use crate::{Error, Result};

/// A single bar: birth `x` and length `d`, so the bar covers `[x, x + d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub x: f64,
    pub d: f64,
}

impl Interval {
    pub const fn new(x: f64, d: f64) -> Self {
        Interval { x, d }
    }

    /// Bar with the given birth and death.
    pub fn from_birth_death(birth: f64, death: f64) -> Self {
        Interval { x: birth, d: death - birth }
    }

    pub fn death(&self) -> f64 {
        self.x + self.d
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.x.total_cmp(&other.x).then(self.d.total_cmp(&other.d))
    }
}

/// Canonical representative of a barcode: no zero-length bars, sorted by
/// birth and then by length.
///
/// Only [`Barcode::normalize`] constructs one, so two barcodes are equal
/// exactly when they are the same point of barcode space.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Barcode {
    intervals: Vec<Interval>,
}

// Normalized values are finite and never -0.0, so bitwise identity and `==` agree.
impl Eq for Barcode {}

impl Hash for Barcode {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.intervals.len().hash(state);
        for bar in &self.intervals {
            bar.x.to_bits().hash(state);
            bar.d.to_bits().hash(state);
        }
    }
}

impl Barcode {
    pub fn empty() -> Self {
        Barcode::default()
    }

    /// Drops zero-length bars and sorts the rest into canonical order.
    pub fn normalize<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut intervals = Vec::new();
        for (index, (x, d)) in raw.into_iter().enumerate() {
            if !x.is_finite() || !d.is_finite() {
                return Err(Error::NonFiniteBar { index });
            }
            if x < 0.0 {
                return Err(Error::NegativeBirth { index, value: x });
            }
            if d < 0.0 {
                return Err(Error::NegativeLength { index, value: d });
            }
            if d == 0.0 {
                continue;
            }
            // `+ 0.0` folds a stray -0.0 birth onto +0.0.
            intervals.push(Interval::new(x + 0.0, d));
        }
        intervals.sort_by(Interval::canonical_cmp);
        Ok(Barcode { intervals })
    }

    pub fn from_intervals<I>(bars: I) -> Result<Self>
    where
        I: IntoIterator<Item = Interval>,
    {
        Barcode::normalize(bars.into_iter().map(|b| (b.x, b.d)))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Interval> {
        self.intervals.iter()
    }

    /// Whether the barcode lies in `B^m_{<=n}`: at most `n_max` bars, each with `x <= m d`.
    pub fn validate(&self, spec: &RegularizedSpec) -> bool {
        self.len() <= spec.n_max && self.iter().all(|b| b.x <= spec.m * b.d)
    }

    /// The bars followed by `(0, 0)` bars up to length `n`.
    pub fn pad(&self, n: usize) -> Result<Vec<Interval>> {
        if self.len() > n {
            return Err(Error::TooManyBars { bars: self.len(), n });
        }
        let mut bars = self.intervals.clone();
        bars.resize(n, Interval::new(0.0, 0.0));
        Ok(bars)
    }
}

impl<'a> IntoIterator for &'a Barcode {
    type Item = &'a Interval;
    type IntoIter = core::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.intervals.iter()
    }
}

/// The regularized subset `B^m_{<=n}`: at most `n_max` bars, all with `x <= m d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularizedSpec {
    pub n_max: usize,
    pub m: f64,
}

impl RegularizedSpec {
    pub fn new(n_max: usize, m: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidRegularization(m));
        }
        Ok(RegularizedSpec { n_max, m })
    }
}
