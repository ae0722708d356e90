use std::fmt;
use std::path::PathBuf;

use tropix_core::MatrixDefect;

/// Malformed input text, located by 1-based line and column.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub origin: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(origin: &str, line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { origin: origin.to_owned(), line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}: {}", self.origin, self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{origin}:{line}: infinite death needs an explicit --cap")]
    UncappedInfinity { origin: String, line: usize },
    #[error("matrix is not symmetric: max |a[{row}][{col}] - a[{col}][{row}]| = {deviation:e}")]
    Asymmetry { row: usize, col: usize, deviation: f64 },
    #[error("{0}")]
    Core(tropix_core::Error),
    #[error("{first} has n={n_first}, m={m_first} but {other} has n={n_other}, m={m_other}")]
    SpecMismatch { first: String, other: String, n_first: usize, m_first: f64, n_other: usize, m_other: f64 },
    #[error("{path} has more than {n} bars or a bar with birth > {m} * length")]
    OutsideSpec { path: String, n: usize, m: f64 },
    #[error("vector {label}: {source}")]
    Fit {
        label: String,
        #[source]
        source: tropix_core::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl From<tropix_core::Error> for Error {
    fn from(err: tropix_core::Error) -> Self {
        match err {
            tropix_core::Error::InvalidMatrix(MatrixDefect::Asymmetric { row, col, deviation }) => {
                Error::Asymmetry { row, col, deviation }
            }
            other => Error::Core(other),
        }
    }
}

impl Error {
    /// Process exit status: 1 for usage mistakes, 2 for bad data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
