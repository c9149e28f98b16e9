use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("radical inverse base must be at least 2, got {0}")]
    InvalidBase(u64),

    #[error("halton bases {0} and {1} are not coprime")]
    BasesNotCoprime(u64, u64),

    #[error("sobol table covers {available} dimensions, {requested} requested")]
    SobolDimension { requested: usize, available: usize },

    #[error("malformed direction-number file at line {line}: {reason}")]
    DirectionFile { line: usize, reason: String },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("expected dimension {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("brute-force discrepancy limited to {limit} points, got {n}")]
    OracleLimit { n: usize, limit: usize },

    #[error("basis position {index} out of range for basis of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("requested {requested} basis functions but only {available} exist with total degree <= {cap}")]
    IndexSetExhausted {
        requested: usize,
        available: usize,
        cap: u32,
    },

    #[error("polynomial degree {0} exceeds the supported maximum of 64")]
    DegreeTooHigh(u32),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is singular or indefinite (smallest eigenvalue {0:e})")]
    NotPositiveDefinite(f64),

    #[error("condition number {kappa:e} exceeds refusal threshold {threshold:e}")]
    IllConditioned { kappa: f64, threshold: f64 },

    #[error("required scenario count exceeds the cap of {0}")]
    CapExceeded(u64),

    #[error("config line {line}: {reason}")]
    Config { line: usize, reason: String },

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
