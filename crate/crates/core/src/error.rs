use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("profile integration failed at x = {x}: {reason}")]
    Integration { x: f64, reason: String },

    #[error("complex continuation failed at z = {z}: {reason}")]
    Continuation { z: num_complex::Complex64, reason: String },

    #[error("branch error: {0}")]
    Branch(String),

    #[error("contour error: {0}")]
    Contour(String),

    #[error("eigen-separation failure: {0}")]
    Separation(String),

    #[error("ODE step-size collapse near x = {x}: {reason}")]
    StepCollapse { x: f64, reason: String },

    #[error("unsupported frequency {zeta}: {reason}")]
    UnsupportedFrequency { zeta: num_complex::Complex64, reason: String },

    #[error("neutral spectral gap violated by mode {j} at x = {x} (signed gap {gap:.3e})")]
    GapViolation { j: usize, x: f64, gap: f64 },

    #[error("internal consistency gate failed: {0}")]
    ConsistencyGate(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("winding computation inconclusive: {0}")]
    Inconclusive(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
