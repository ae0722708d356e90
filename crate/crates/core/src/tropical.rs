//! Tropical coordinates on the regularized barcode space `B^m_{<=n}`.
//!
//! Each coordinate is an elementary 2-symmetric max-plus polynomial
//! `E_{m,(0,1)^i,(1,1)^j}` evaluated at the bars. After the min-plus
//! substitution `x -> x ⊕ d^m = min(x, m d)`, the polynomial is the largest
//! total obtainable by picking `j` bars that each contribute `min(x, m d) + d`
//! and `i` further, distinct bars that each contribute `d`.
//!
//! Coordinates are indexed by [`OrbitIndex`] `(i, j)` with `1 <= i + j <= n`
//! and laid out by ascending `j`, then ascending `i`. For `n = 2` this is
//! `E_(0,1), E_(0,1)^2, E_(1,1), E_(0,1)(1,1), E_(1,1)^2`.

use alloc::vec::Vec;

use crate::barcode::{Barcode, Interval, RegularizedSpec};
use crate::{Error, Result};

/// Largest bar count accepted by [`evaluate_orbit_bruteforce`].
pub const BRUTEFORCE_MAX_BARS: usize = 12;

/// One coordinate: `i` rows `(0,1)` (contribute `d`) and `j` rows `(1,1)`
/// (contribute truncated birth plus `d`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitIndex {
    pub i: usize,
    pub j: usize,
}

impl OrbitIndex {
    pub const fn new(i: usize, j: usize) -> Self {
        OrbitIndex { i, j }
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.i == 0 && self.j == 0 {
            return Err(Error::ExcludedOrbit);
        }
        if self.i + self.j > n {
            return Err(Error::IndexOutOfRange { i: self.i, j: self.j, n });
        }
        Ok(())
    }
}

impl core::fmt::Display for OrbitIndex {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "i{}j{}", self.i, self.j)
    }
}

/// Number of coordinates for barcodes with at most `n` bars: `n + n(n+1)/2`.
pub const fn dimension(n: usize) -> usize {
    n + n * (n + 1) / 2
}

/// The coordinate layout for `n` bars.
pub fn orbit_layout(n: usize) -> Vec<OrbitIndex> {
    let mut layout = Vec::with_capacity(dimension(n));
    for j in 0..=n {
        for i in 0..=(n - j) {
            if i + j > 0 {
                layout.push(OrbitIndex::new(i, j));
            }
        }
    }
    layout
}

/// Image of a barcode under `T`, tagged with the spec it was computed under.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalVector {
    spec: RegularizedSpec,
    values: Vec<f64>,
}

impl TropicalVector {
    /// Wraps precomputed values (e.g. read back from a file).
    pub fn from_values(spec: RegularizedSpec, values: Vec<f64>) -> Result<Self> {
        let expected = dimension(spec.n_max);
        if values.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: values.len() });
        }
        Ok(TropicalVector { spec, values })
    }

    pub fn spec(&self) -> RegularizedSpec {
        self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn layout(&self) -> Vec<OrbitIndex> {
        orbit_layout(self.spec.n_max)
    }

    pub fn get(&self, idx: OrbitIndex) -> Option<f64> {
        self.layout().iter().position(|&o| o == idx).map(|k| self.values[k])
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

impl AsRef<[f64]> for TropicalVector {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Smallest workable regularization constant for a dataset: the largest
/// quotient `x / d`, never below 1.
pub fn compute_m(barcodes: &[Barcode]) -> f64 {
    let bars = || barcodes.iter().flat_map(Barcode::iter);
    let mut m = bars().map(|b| b.x / b.d).fold(1.0_f64, f64::max);
    // x / d can round below the true quotient; step up until x <= m d holds.
    while bars().any(|b| b.x > m * b.d) {
        m = m.next_up();
    }
    m
}

/// `x ⊕ d^m` in the min-plus semiring.
#[inline]
pub fn truncate_birth(x: f64, d: f64, m: f64) -> f64 {
    x.min(m * d)
}

/// Evaluates `E_{m,(0,1)^i,(1,1)^j}` on a padded bar list by dynamic
/// programming over the bars, in `O(n i j)`.
pub fn evaluate_orbit(bars: &[Interval], idx: OrbitIndex, m: f64) -> Result<f64> {
    idx.check(bars.len())?;
    let (ni, nj) = (idx.i, idx.j);
    let width = ni + 1;
    // best[u * width + v]: best total with u bars used as (1,1) and v as (0,1).
    let mut best = alloc::vec![f64::NEG_INFINITY; (nj + 1) * width];
    best[0] = 0.0;
    for bar in bars {
        let full = truncate_birth(bar.x, bar.d, m) + bar.d;
        for u in (0..=nj).rev() {
            for v in (0..=ni).rev() {
                let mut cur = best[u * width + v];
                if u > 0 {
                    cur = cur.max(best[(u - 1) * width + v] + full);
                }
                if v > 0 {
                    cur = cur.max(best[u * width + v - 1] + bar.d);
                }
                best[u * width + v] = cur;
            }
        }
    }
    Ok(best[nj * width + ni])
}

/// Same value as [`evaluate_orbit`], by enumerating every choice of `j`
/// bars and then `i` of the remaining ones. Sums are accumulated in bar
/// order, so the two agree bit for bit.
pub fn evaluate_orbit_bruteforce(bars: &[Interval], idx: OrbitIndex, m: f64) -> Result<f64> {
    let n = bars.len();
    if n > BRUTEFORCE_MAX_BARS {
        return Err(Error::OracleSizeExceeded { size: n, limit: BRUTEFORCE_MAX_BARS });
    }
    idx.check(n)?;
    let mut best = f64::NEG_INFINITY;
    for full_mask in subsets_of_size(n, idx.j, 0) {
        for d_mask in subsets_of_size(n, idx.i, full_mask) {
            let mut total = 0.0;
            for (k, bar) in bars.iter().enumerate() {
                if full_mask >> k & 1 == 1 {
                    total += truncate_birth(bar.x, bar.d, m) + bar.d;
                } else if d_mask >> k & 1 == 1 {
                    total += bar.d;
                }
            }
            best = best.max(total);
        }
    }
    Ok(best)
}

fn subsets_of_size(n: usize, size: usize, exclude: u32) -> impl Iterator<Item = u32> {
    (0u32..(1 << n)).filter(move |mask| mask & exclude == 0 && mask.count_ones() as usize == size)
}

/// The map `T`: all coordinates of a barcode in the regularized subset `spec`.
pub fn tropicalize(barcode: &Barcode, spec: &RegularizedSpec) -> Result<TropicalVector> {
    if !barcode.validate(spec) {
        return Err(Error::ValidationFailed);
    }
    let bars = barcode.pad(spec.n_max)?;
    let values = orbit_layout(spec.n_max)
        .into_iter()
        .map(|idx| evaluate_orbit(&bars, idx, spec.m))
        .collect::<Result<Vec<_>>>()?;
    Ok(TropicalVector { spec: *spec, values })
}

/// Dataset-wide spec: `n` is the largest bar count, `m` comes from [`compute_m`].
pub fn dataset_spec(barcodes: &[Barcode]) -> Result<RegularizedSpec> {
    if barcodes.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let n_max = barcodes.iter().map(Barcode::len).max().unwrap_or(0);
    RegularizedSpec::new(n_max, compute_m(barcodes))
}

/// Tropicalizes a dataset under one shared spec so every vector has the same layout.
pub fn batch_tropicalize(barcodes: &[Barcode]) -> Result<(Vec<TropicalVector>, RegularizedSpec)> {
    let spec = dataset_spec(barcodes)?;
    let vectors = barcodes.iter().map(|b| tropicalize(b, &spec)).collect::<Result<Vec<_>>>()?;
    Ok((vectors, spec))
}
