use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("quadrature did not converge: requested {requested:.3e}, achieved {achieved:.3e} (depth {depth})")]
    QuadratureNonConvergence {
        requested: f64,
        achieved: f64,
        depth: u32,
    },
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("no d-value available at x = {0}")]
    MissingDValue(f64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("kernel degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: u64, cap: u64 },
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
