use thiserror::Error;

/// Errors raised by matrix validation, divergence evaluation and reconstruction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has dimension zero")]
    Empty,

    #[error("not Hermitian (max |M - M*| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("trace is not 1 (got {trace})")]
    InvalidTrace { trace: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("eigenvalue {value:e} outside the function domain")]
    Domain { value: f64 },

    #[error("vector norm {norm} is not 1")]
    NotUnitNorm { norm: f64 },

    #[error("not an orthogonal projection (deviation {deviation:e})")]
    NotProjection { deviation: f64 },

    #[error("state is not rank one (rank {rank})")]
    NotRankOne { rank: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("value {value} outside admissible range [{lo}, {hi}]")]
    Range { value: f64, lo: f64, hi: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("divergence evaluated to {value:e}, below the rounding floor")]
    NegativeDivergence { value: f64 },

    #[error(
        "not a preserver: transition probability of probes {first} and {second} is {expected} but images give {found}"
    )]
    NotAPreserver {
        first: String,
        second: String,
        expected: f64,
        found: f64,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("oracle error: {0}")]
    Oracle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
