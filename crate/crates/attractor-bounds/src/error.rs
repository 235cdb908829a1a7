use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("eigenvalue enumeration requires a box domain")]
    NotABox,

    #[error("eigenvalue count m must be at least 1")]
    ZeroModes,

    #[error(
        "melas constant c = {c} outside validity window (0, {bound}) = (0, (2π)² ω_n^{{-4/n}}) for n = {n}"
    )]
    MelasConstantOutOfWindow { c: f64, bound: f64, n: u32 },

    #[error("invalid CGL parameters: {0}")]
    InvalidParams(String),

    #[error("trivial regime — attractor is {{0}}: gamma = {gamma} <= threshold {threshold}")]
    TrivialRegime { gamma: f64, threshold: f64 },

    #[error("invalid simulation config: {0}")]
    InvalidSimConfig(String),

    #[error("invalid run config: {0}")]
    InvalidConfig(String),

    #[error("numerical blow-up: coefficient magnitude exceeded guard {guard:e}; last stable t = {last_stable_t}")]
    Blowup { guard: f64, last_stable_t: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Blowup { .. } => 3,
            _ => 2,
        }
    }
}
