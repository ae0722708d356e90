//! Tropical coordinates for persistence barcodes.
//!
//! The crate is `no_std` (it needs `alloc`) and contains every algorithm of the
//! toolkit:
//!
//! * [`barcode`]: canonical barcodes modulo zero-length bars, regularized subsets.
//! * [`tropical`]: max-plus coordinates `E_{m,(0,1)^i,(1,1)^j}` and the vector map `T`.
//! * [`metrics`]: bottleneck and Wasserstein distances with brute-force oracles.
//! * [`persistence`]: Vietoris–Rips persistence in dimensions 0 and 1.
//! * [`stats`]: Gaussian marginals, exponential-family likelihoods, KL / Hellinger.
//! * [`projection`]: classical MDS and PCA on a Jacobi eigensolver.
//!
//! File formats, the command line and parallel drivers live in the `tropix` crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod assignment;
pub mod barcode;
mod error;
pub mod linalg;
pub mod matching;
pub mod matrix;
pub mod metrics;
pub mod persistence;
pub mod projection;
pub mod quadrature;
pub mod stats;
pub mod tropical;

pub use barcode::{Barcode, Interval, RegularizedSpec};
pub use error::{Error, MatrixDefect};
pub use matrix::DistanceMatrix;
pub use metrics::Metric;
pub use stats::{DivergenceKind, GaussianModel, SimilarityMatrix};
pub use tropical::{OrbitIndex, TropicalVector};

pub type Result<T, E = Error> = core::result::Result<T, E>;
