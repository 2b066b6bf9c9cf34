//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Shapes or channel counts disagree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A parameter is outside its valid range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Input is degenerate (rank-deficient matrix, all-zero spectra, ...).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A serialized file is malformed; `offset` is the byte position of the defect.
    #[error("format error at byte {offset}: {message}")]
    Format { offset: u64, message: String },

    /// A band directory could not be ingested; names the offending file.
    #[error("ingestion error for {file}: {message}")]
    Ingest { file: String, message: String },

    /// The external-denoiser bridge failed (exit status, timeout, bad output).
    #[error("bridge error: {0}")]
    Bridge(String),

    /// An iterative solve did not reach its tolerance.
    #[error("solver did not converge: relative residual {residual:.3e} after {iterations} iterations")]
    Convergence { residual: f64, iterations: usize },

    /// A non-finite value appeared in an iterate.
    #[error("numerical failure at iteration {iteration}: {message}")]
    Numerical { iteration: usize, message: String },

    /// A gradient-estimator mode was requested that the inner denoiser cannot support.
    #[error("estimator mode error: {0}")]
    Mode(String),

    /// Training aborted (non-finite loss, propagated failures).
    #[error("training failure: {0}")]
    Training(String),

    /// A run configuration is malformed or contains unknown keys.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
