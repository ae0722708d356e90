//! File formats, run manifests and the `tropix` command-line pipeline built
//! on [`tropix_core`].

pub mod cli;
pub mod demo;
pub mod error;
pub mod format;
pub mod manifest;
pub mod parallel;

pub use error::{Error, ParseError, Result};
pub use manifest::RunManifest;
