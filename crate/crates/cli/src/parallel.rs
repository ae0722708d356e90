//! Pair-level parallelism on a pool sized by `TROPIX_THREADS`.
//!
//! Every entry is computed independently and collected in index order, so
//! results do not depend on the thread count.

use rayon::prelude::*;
use rayon::ThreadPool;
use tropix_core::metrics::Metric;
use tropix_core::stats::{divergence, similarity_from_entries, DivergenceKind};
use tropix_core::tropical::{tropicalize, TropicalVector};
use tropix_core::{Barcode, DistanceMatrix, GaussianModel, RegularizedSpec, SimilarityMatrix};

use crate::error::{Error, Result};

pub const THREADS_VAR: &str = "TROPIX_THREADS";

/// Thread count from `TROPIX_THREADS`, if set.
pub fn configured_threads() -> Result<Option<usize>> {
    match std::env::var(THREADS_VAR) {
        Err(_) => Ok(None),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Usage(format!("{THREADS_VAR} must be a positive integer, got {raw:?}"))),
        },
    }
}

pub fn thread_pool(threads: Option<usize>) -> Result<ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| Error::Usage(format!("cannot start worker threads: {e}")))
}

pub fn pairwise_matrix(pool: &ThreadPool, barcodes: &[Barcode], metric: Metric) -> Result<DistanceMatrix> {
    metric.check()?;
    let n = barcodes.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).collect();
    let values = pool.install(|| {
        pairs.par_iter().map(|&(i, j)| metric.distance(&barcodes[i], &barcodes[j])).collect::<Result<Vec<f64>, _>>()
    })?;
    let mut entries = vec![0.0; n * n];
    for (&(i, j), d) in pairs.iter().zip(values) {
        entries[i * n + j] = d;
        entries[j * n + i] = d;
    }
    Ok(DistanceMatrix::new(n, entries)?)
}

pub fn tropicalize_all(pool: &ThreadPool, barcodes: &[Barcode], spec: &RegularizedSpec) -> Result<Vec<TropicalVector>> {
    let vectors = pool.install(|| barcodes.par_iter().map(|b| tropicalize(b, spec)).collect::<Result<Vec<_>, _>>())?;
    Ok(vectors)
}

pub fn similarity_matrix(
    pool: &ThreadPool,
    models: &[GaussianModel],
    kind: DivergenceKind,
) -> Result<SimilarityMatrix> {
    if models.len() < 2 {
        return Err(tropix_core::Error::TooFewObservations { found: models.len(), needed: 2 }.into());
    }
    let k = models.len();
    let entries: Vec<f64> = pool.install(|| {
        (0..k * k).into_par_iter().map(|idx| divergence(&models[idx / k], &models[idx % k], kind)).collect()
    });
    Ok(similarity_from_entries(kind, k, entries)?)
}
