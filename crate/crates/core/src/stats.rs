//! Parametric models on tropical coordinates.
//!
//! Each barcode gets a univariate Gaussian `N(mu_k, sigma2_k)` fit to the
//! coordinates of its (optionally square-rooted) tropical vector; pairs of
//! fits are compared with the closed-form Kullback–Leibler divergence and
//! squared Hellinger distance. Likelihoods are exponential-family densities
//! `h(x) exp{<eta, T(x)> - A}` with `h = 1`, always evaluated in log space.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::quadrature;
use crate::{Error, Result};

/// Univariate normal model `N(mu, sigma2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianModel {
    mu: f64,
    sigma2: f64,
}

impl GaussianModel {
    pub fn new(mu: f64, sigma2: f64) -> Result<Self> {
        if !(sigma2.is_finite() && sigma2 > 0.0) || !mu.is_finite() {
            return Err(Error::InvalidVariance(sigma2));
        }
        Ok(GaussianModel { mu, sigma2 })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn sigma(&self) -> f64 {
        libm::sqrt(self.sigma2)
    }

    pub fn log_density(&self, x: f64) -> f64 {
        let z = x - self.mu;
        -0.5 * z * z / self.sigma2 - 0.5 * libm::log(2.0 * PI * self.sigma2)
    }

    /// The model of `dim` i.i.d. coordinates as an exponential family over
    /// the statistic `(sum x, sum x^2)` (see [`gaussian_statistic`]).
    pub fn iid_family(&self, dim: usize) -> ExponentialFamilyModel {
        let eta = alloc::vec![self.mu / self.sigma2, -0.5 / self.sigma2];
        let per_coordinate = 0.5 * self.mu * self.mu / self.sigma2 + 0.5 * libm::log(2.0 * PI * self.sigma2);
        ExponentialFamilyModel { eta, log_partition: dim as f64 * per_coordinate }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarianceEstimator {
    /// Divides by `n - 1`.
    #[default]
    Unbiased,
    /// Divides by `n`.
    MaximumLikelihood,
}

/// Fits `N(mu, sigma2)` to the coordinates of one vector (unbiased variance).
pub fn fit_gaussian(values: &[f64], sqrt_transform: bool) -> Result<GaussianModel> {
    fit_gaussian_with(values, sqrt_transform, VarianceEstimator::Unbiased)
}

pub fn fit_gaussian_with(values: &[f64], sqrt_transform: bool, estimator: VarianceEstimator) -> Result<GaussianModel> {
    if values.len() < 2 {
        return Err(Error::TooFewObservations { found: values.len(), needed: 2 });
    }
    let sample: Vec<f64> = if sqrt_transform {
        values
            .iter()
            .enumerate()
            .map(|(index, &v)| if v < 0.0 { Err(Error::NegativeEntry { index, value: v }) } else { Ok(libm::sqrt(v)) })
            .collect::<Result<_>>()?
    } else {
        values.to_vec()
    };
    let n = sample.len() as f64;
    let mu = sample.iter().sum::<f64>() / n;
    let ss: f64 = sample.iter().map(|v| (v - mu) * (v - mu)).sum();
    let denom = match estimator {
        VarianceEstimator::Unbiased => n - 1.0,
        VarianceEstimator::MaximumLikelihood => n,
    };
    let sigma2 = ss / denom;
    if sigma2 == 0.0 {
        return Err(Error::DegenerateFit);
    }
    GaussianModel::new(mu, sigma2)
}

/// Sufficient statistic `(sum x, sum x^2)` of i.i.d. Gaussian coordinates.
pub fn gaussian_statistic(values: &[f64]) -> [f64; 2] {
    let sum = values.iter().sum();
    let sum_sq = values.iter().map(|v| v * v).sum();
    [sum, sum_sq]
}

/// Exponential-family density `exp{<eta, T> - A}` with base measure `h = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialFamilyModel {
    pub eta: Vec<f64>,
    /// `A(theta)`; `a(theta) = exp(-A)`.
    pub log_partition: f64,
}

impl ExponentialFamilyModel {
    pub fn new(eta: Vec<f64>, log_partition: f64) -> Self {
        ExponentialFamilyModel { eta, log_partition }
    }

    /// `log h(x) + <eta, T(x)> - A` with `log h = 0`.
    pub fn log_likelihood(&self, statistic: &[f64]) -> Result<f64> {
        if statistic.len() != self.eta.len() {
            return Err(Error::DimensionMismatch { expected: self.eta.len(), found: statistic.len() });
        }
        let inner: f64 = self.eta.iter().zip(statistic).map(|(e, t)| e * t).sum();
        Ok(inner - self.log_partition)
    }
}

/// Joint log-likelihood `K log a(theta) + sum_k <eta, T(B_k)>` of `K`
/// observations.
///
/// Pass one model to share it across all observations, or one model per
/// observation.
pub fn exp_family_loglik<S: AsRef<[f64]>>(models: &[ExponentialFamilyModel], statistics: &[S]) -> Result<f64> {
    if models.len() != 1 && models.len() != statistics.len() {
        return Err(Error::DimensionMismatch { expected: statistics.len(), found: models.len() });
    }
    statistics
        .iter()
        .enumerate()
        .map(|(k, t)| models[if models.len() == 1 { 0 } else { k }].log_likelihood(t.as_ref()))
        .sum()
}

/// `KLD(a || b)` for two normals.
pub fn kld_gaussian(a: &GaussianModel, b: &GaussianModel) -> f64 {
    let dmu = a.mu - b.mu;
    let value = 0.5 * libm::log(b.sigma2 / a.sigma2) + (a.sigma2 + dmu * dmu) / (2.0 * b.sigma2) - 0.5;
    value.max(0.0)
}

/// Squared Hellinger distance `H^2(a, b)` for two normals; lies in `[0, 1]`.
pub fn hellinger_gaussian(a: &GaussianModel, b: &GaussianModel) -> f64 {
    let dmu = a.mu - b.mu;
    let total = a.sigma2 + b.sigma2;
    // sqrt(s_a^2 s_b^2) rather than s_a * s_b keeps identical models at exactly 0.
    let coefficient = libm::sqrt(2.0 * libm::sqrt(a.sigma2 * b.sigma2) / total);
    let value = 1.0 - coefficient * libm::exp(-dmu * dmu / (4.0 * total));
    value.clamp(0.0, 1.0)
}

/// Which defining integral [`divergence_quadrature`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceIntegral {
    Kld,
    HellingerSquared,
}

/// Tolerance the quadrature oracle integrates to.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

/// Numerically integrates the defining integral of the divergence, as an
/// independent check on [`kld_gaussian`] and [`hellinger_gaussian`].
///
/// KLD is integrated over `mu_a ± 10 sigma_a`, Hellinger over the union of
/// both `± 10 sigma` windows, each split at every whole sigma.
pub fn divergence_quadrature(a: &GaussianModel, b: &GaussianModel, kind: DivergenceIntegral) -> Result<f64> {
    let windows: &[&GaussianModel] = match kind {
        DivergenceIntegral::Kld => &[a],
        DivergenceIntegral::HellingerSquared => &[a, b],
    };
    let lo = windows.iter().map(|g| g.mu - 10.0 * g.sigma()).fold(f64::INFINITY, f64::min);
    let hi = windows.iter().map(|g| g.mu + 10.0 * g.sigma()).fold(f64::NEG_INFINITY, f64::max);
    let breaks: Vec<f64> = [a, b].iter().flat_map(|g| (-10..=10).map(move |k| g.mu + k as f64 * g.sigma())).collect();
    match kind {
        DivergenceIntegral::Kld => quadrature::integrate(
            |x| {
                let (la, lb) = (a.log_density(x), b.log_density(x));
                libm::exp(la) * (la - lb)
            },
            lo,
            hi,
            &breaks,
            QUADRATURE_TOLERANCE,
        ),
        DivergenceIntegral::HellingerSquared => quadrature::integrate(
            |x| {
                let diff = libm::exp(0.5 * a.log_density(x)) - libm::exp(0.5 * b.log_density(x));
                0.5 * diff * diff
            },
            lo,
            hi,
            &breaks,
            QUADRATURE_TOLERANCE,
        ),
    }
}

/// Entry type of a [`SimilarityMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceKind {
    /// `KLD(row || column)`.
    Kld,
    /// `1 - exp(-KLD)`, in `[0, 1)`.
    KldStar,
    /// `1 - KLD`, the alternative rescaling; not bounded.
    KldLinear,
    /// Squared Hellinger distance, in `[0, 1]`.
    Hellinger,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    kind: DivergenceKind,
    size: usize,
    entries: Vec<f64>,
}

impl SimilarityMatrix {
    pub fn kind(&self) -> DivergenceKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }
}

/// One entry of a similarity matrix.
pub fn divergence(a: &GaussianModel, b: &GaussianModel, kind: DivergenceKind) -> f64 {
    match kind {
        DivergenceKind::Kld => kld_gaussian(a, b),
        DivergenceKind::KldStar => 1.0 - libm::exp(-kld_gaussian(a, b)),
        DivergenceKind::KldLinear => 1.0 - kld_gaussian(a, b),
        DivergenceKind::Hellinger => hellinger_gaussian(a, b),
    }
}

/// All pairwise divergences between `K >= 2` fitted models.
pub fn similarity_matrix(models: &[GaussianModel], kind: DivergenceKind) -> Result<SimilarityMatrix> {
    if models.len() < 2 {
        return Err(Error::TooFewObservations { found: models.len(), needed: 2 });
    }
    let size = models.len();
    let entries = models.iter().flat_map(|a| models.iter().map(move |b| divergence(a, b, kind))).collect();
    Ok(SimilarityMatrix { kind, size, entries })
}

/// Assembles a matrix from entries computed elsewhere (e.g. in parallel).
pub fn similarity_from_entries(kind: DivergenceKind, size: usize, entries: Vec<f64>) -> Result<SimilarityMatrix> {
    if entries.len() != size * size {
        return Err(Error::DimensionMismatch { expected: size * size, found: entries.len() });
    }
    Ok(SimilarityMatrix { kind, size, entries })
}
