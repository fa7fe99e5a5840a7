//! Error type shared by all modules.

use std::fmt;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input violates a documented precondition.
    Domain(String),
    /// A numerical routine failed to converge or meet its accuracy target.
    Numerical(String),
    /// The requested operation is undefined because the system is in the
    /// parametric-instability (net-heating) regime.
    Instability(String),
    /// Linear-modulation expansion invalid; use the Bessel-series transmission.
    ModulationTooLarge { beta: f64 },
    /// Spectrum arithmetic on incompatible grids or unit tags.
    SpectrumMismatch(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical error: {msg}"),
            Error::Instability(msg) => write!(f, "instability: {msg}"),
            Error::ModulationTooLarge { beta } => write!(
                f,
                "modulation index |beta| = {beta:.3} too large for the linear sideband \
                 expansion; use bessel_transmission instead"
            ),
            Error::SpectrumMismatch(msg) => write!(f, "spectrum mismatch: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg.into()))
    }
}

pub(crate) fn ensure_finite(value: f64, name: &str) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {value}")))
    }
}
