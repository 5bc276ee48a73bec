use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A†| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("speed {speed} is not below the speed of light")]
    SuperluminalVelocity { speed: f64 },

    #[error("four-momentum is off the mass shell: p·p = {norm_sq}, m² = {mass_sq}")]
    OffMassShell { norm_sq: f64, mass_sq: f64 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("factor label mismatch: {0}")]
    LabelMismatch(String),

    #[error("Rényi order must be non-negative and different from 1, got {0}")]
    InvalidAlpha(f64),

    #[error("quadrature needs at least 3 nodes per axis, got {nodes}")]
    QuadratureTooCoarse { nodes: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("unsupported scenario: {0}")]
    UnsupportedScenario(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
