use core::fmt;

/// What is wrong with a candidate distance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixDefect {
    /// Entry count is not `size * size`.
    Shape {
        size: usize,
        entries: usize,
    },
    NonFinite {
        row: usize,
        col: usize,
    },
    Negative {
        row: usize,
        col: usize,
        value: f64,
    },
    NonzeroDiagonal {
        index: usize,
        value: f64,
    },
    /// Largest `|a_ij - a_ji|` and where it was found.
    Asymmetric {
        row: usize,
        col: usize,
        deviation: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    NegativeBirth {
        index: usize,
        value: f64,
    },
    NegativeLength {
        index: usize,
        value: f64,
    },
    NonFiniteBar {
        index: usize,
    },
    TooManyBars {
        bars: usize,
        n: usize,
    },
    /// `i + j` exceeds the number of bars.
    IndexOutOfRange {
        i: usize,
        j: usize,
        n: usize,
    },
    /// The all-`(0,0)` orbit `i = j = 0` carries no information.
    ExcludedOrbit,
    OracleSizeExceeded {
        size: usize,
        limit: usize,
    },
    ValidationFailed,
    EmptyDataset,
    InvalidP(f64),
    InvalidRegularization(f64),
    InvalidMatrix(MatrixDefect),
    SizeExceeded {
        size: usize,
        limit: usize,
    },
    InvalidThreshold(f64),
    DegenerateFit,
    NegativeEntry {
        index: usize,
        value: f64,
    },
    TooFewObservations {
        found: usize,
        needed: usize,
    },
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    InvalidVariance(f64),
    QuadratureNonConvergence {
        estimate: f64,
        error: f64,
    },
    DegenerateInput,
}

impl fmt::Display for MatrixDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MatrixDefect::Shape { size, entries } => {
                write!(f, "expected {} entries for a {size}x{size} matrix, found {entries}", size * size)
            }
            MatrixDefect::NonFinite { row, col } => write!(f, "entry ({row}, {col}) is not finite"),
            MatrixDefect::Negative { row, col, value } => {
                write!(f, "entry ({row}, {col}) is negative ({value})")
            }
            MatrixDefect::NonzeroDiagonal { index, value } => {
                write!(f, "diagonal entry ({index}, {index}) is {value}, expected 0")
            }
            MatrixDefect::Asymmetric { row, col, deviation } => {
                write!(f, "matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {deviation:e}")
            }
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NegativeBirth { index, value } => {
                write!(f, "bar {index} has negative birth {value}")
            }
            Error::NegativeLength { index, value } => {
                write!(f, "bar {index} has negative length {value}")
            }
            Error::NonFiniteBar { index } => write!(f, "bar {index} has a non-finite coordinate"),
            Error::TooManyBars { bars, n } => {
                write!(f, "barcode has {bars} bars but at most {n} are allowed")
            }
            Error::IndexOutOfRange { i, j, n } => {
                write!(f, "orbit (i={i}, j={j}) needs i + j <= {n}")
            }
            Error::ExcludedOrbit => f.write_str("orbit i = j = 0 is excluded"),
            Error::OracleSizeExceeded { size, limit } => {
                write!(f, "brute-force oracle refused size {size} (limit {limit})")
            }
            Error::ValidationFailed => {
                f.write_str("barcode is outside the regularized subset (x <= m d, at most n bars)")
            }
            Error::EmptyDataset => f.write_str("no barcodes supplied"),
            Error::InvalidP(p) => write!(f, "Wasserstein exponent must lie in [1, 16], got {p}"),
            Error::InvalidRegularization(m) => {
                write!(f, "regularization constant must be positive and finite, got {m}")
            }
            Error::InvalidMatrix(defect) => write!(f, "invalid distance matrix: {defect}"),
            Error::SizeExceeded { size, limit } => {
                write!(f, "input of size {size} exceeds the limit {limit}")
            }
            Error::InvalidThreshold(t) => {
                write!(f, "filtration threshold must be positive and finite, got {t}")
            }
            Error::DegenerateFit => f.write_str("sample variance is zero"),
            Error::NegativeEntry { index, value } => {
                write!(f, "entry {index} is negative ({value}); square root undefined")
            }
            Error::TooFewObservations { found, needed } => {
                write!(f, "need at least {needed} values, found {found}")
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidVariance(v) => write!(f, "variance must be positive and finite, got {v}"),
            Error::QuadratureNonConvergence { estimate, error } => {
                write!(f, "quadrature did not converge (estimate {estimate}, error bound {error:e})")
            }
            Error::DegenerateInput => f.write_str("all pairwise distances are zero"),
        }
    }
}

impl core::error::Error for Error {}
