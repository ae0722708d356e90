//! A polynomial barcode feature that is not Lipschitz, next to tropical
//! coordinates that are.
//!
//! `B_x` is the single bar `[x, x + 1)` and `B_0` the empty barcode, so the
//! bottleneck distance between them is 1/2 for every `x`. The polynomial
//! `p21(B) = sum (birth + death)^2 (death - birth)` evaluates to `(2x + 1)^2`
//! on `B_x`, growing without bound, while the tropical coordinates move by
//! at most `x + 1`.

use tropix_core::metrics::bottleneck;
use tropix_core::tropical::{compute_m, tropicalize};
use tropix_core::{Barcode, RegularizedSpec};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DemoRow {
    pub x: f64,
    pub p21_diff: f64,
    pub bottleneck: f64,
    pub tropical_diff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemoTable {
    pub rows: Vec<DemoRow>,
    /// Regularization constant shared by the whole sweep.
    pub m: f64,
}

pub fn p21(barcode: &Barcode) -> f64 {
    barcode
        .iter()
        .map(|bar| {
            let (birth, death) = (bar.x, bar.x + bar.d);
            (birth + death) * (birth + death) * (death - birth)
        })
        .sum()
}

pub fn demo_nonlipschitz(xs: &[f64]) -> Result<DemoTable> {
    let shifted: Vec<Barcode> = xs.iter().map(|&x| Barcode::normalize([(x, 1.0)])).collect::<Result<_, _>>()?;
    let base = Barcode::empty();
    let m = compute_m(&shifted);
    let spec = RegularizedSpec::new(1, m)?;
    let base_vec = tropicalize(&base, &spec)?;
    let rows = xs
        .iter()
        .zip(&shifted)
        .map(|(&x, bx)| {
            let v = tropicalize(bx, &spec)?;
            let tropical_diff =
                v.values().iter().zip(base_vec.values()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            Ok(DemoRow { x, p21_diff: p21(bx) - p21(&base), bottleneck: bottleneck(&base, bx), tropical_diff })
        })
        .collect::<Result<_>>()?;
    Ok(DemoTable { rows, m })
}

/// Least-squares slope of `ln y` against `ln(1 + x)`; `None` without two
/// distinct abscissae or with a nonpositive `y`.
pub fn growth_exponent(points: &[(f64, f64)]) -> Option<f64> {
    if points.iter().any(|&(_, y)| y <= 0.0) {
        return None;
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln_1p(), y.ln())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    Some(sxy / sxx)
}

impl DemoTable {
    pub fn tropical_exponent(&self) -> Option<f64> {
        growth_exponent(&self.rows.iter().map(|r| (r.x, r.tropical_diff)).collect::<Vec<_>>())
    }

    pub fn p21_exponent(&self) -> Option<f64> {
        growth_exponent(&self.rows.iter().map(|r| (r.x, r.p21_diff)).collect::<Vec<_>>())
    }
}
