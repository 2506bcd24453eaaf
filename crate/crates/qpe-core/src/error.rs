//! Error type shared by every module in the crate.

/// Unified error type. Variants are grouped by failure class so callers can
/// map them onto process exit codes without string matching.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Dimension or arity mismatch between operands.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A composed operator would exceed the configured dimension cap.
    #[error("requested dimension {requested} exceeds cap {cap}")]
    Capacity { requested: usize, cap: usize },

    /// Unitarity validation failed at construction.
    #[error("matrix is not unitary: residual {residual:.3e} exceeds {tol:.1e}")]
    NotUnitary { residual: f64, tol: f64 },

    /// An eigensolve or similar kernel lost too much precision to trust.
    #[error("numerical instability: {0}")]
    NumericalInstability(String),

    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// NaN or infinity where a finite value is required.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// A correlation statistic has no defined value for this input.
    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    /// Malformed tabular input; the message names the offending row/column.
    #[error("csv ingestion failed: {0}")]
    Ingest(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
