use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Amplitudes whose norm is too small to normalize.
    #[error("state vector has (near-)zero norm {norm:e}")]
    ZeroVector { norm: f64 },

    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    /// A parameter outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid observable: {0}")]
    InvalidObservable(String),

    /// Unparseable textual spec (state prep, observable, event, catalog line).
    #[error("parse error: {0}")]
    Parse(String),
}
