use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the function being evaluated.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("time {t} is beyond the subsolution lifetime {lifetime}")]
    LifetimeExceeded { t: f64, lifetime: f64 },

    #[error("time {t} is beyond the subsolution horizon {horizon}")]
    HorizonExceeded { t: f64, horizon: f64 },

    #[error("parameter synthesis failed: {0}")]
    Synthesis(String),

    /// The requested time step breaks the monotonicity bound of the scheme.
    #[error("step rejected: dt = {dt} exceeds admissible dt = {admissible}")]
    StepRejected { dt: f64, admissible: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
