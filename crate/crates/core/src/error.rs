use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the effective-Hamiltonian pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension for {what}: {dim}")]
    InvalidDimension { what: &'static str, dim: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not Hermitian (defect {defect:.3e}, scale {scale:.3e})")]
    NotHermitian { defect: f64, scale: f64 },

    #[error("invalid block partition: {0}")]
    InvalidPartition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A closed-form expression or solver hit a vanishing denominator.
    #[error("pole: {resonance} (denominator {value:.3e})")]
    Pole { resonance: String, value: f64 },

    /// Eigenvectors could not be uniquely labelled by block.
    #[error("degenerate eigenvector assignment for block {block}: overlaps {first:.9} vs {second:.9}")]
    DegenerateAssignment {
        block: usize,
        first: f64,
        second: f64,
        /// Overlap table, one row per eigenvector, one column per block.
        overlaps: Vec<Vec<f64>>,
    },

    #[error("ill-conditioned partition: smallest eigenvalue of X_BD X_BD^dagger is {min_eigenvalue:.3e}")]
    IllConditionedPartition { min_eigenvalue: f64 },

    #[error("small denominator between states {left} and {right}: E = {e_left:.6e}, {e_right:.6e}")]
    SmallDenominator {
        left: usize,
        right: usize,
        e_left: f64,
        e_right: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("generator S_{0} requested before it was solved")]
    MissingGenerator(usize),

    #[error("singular linear system in Sylvester solve")]
    SingularSystem,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("config error{}: {field}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Config {
        line: Option<usize>,
        field: String,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(line: Option<usize>, field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            line,
            field: field.into(),
            message: message.into(),
        }
    }
}
