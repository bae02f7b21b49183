use num_complex::Complex64;
use std::fmt;

/// Crate-wide error type.
#[derive(Debug)]
pub enum Error {
    /// Malformed argument (zero where positive required, bad parse, ...).
    InvalidInput(String),
    /// Input outside the mathematical domain of a closed form or transform.
    Domain(String),
    /// A configured budget (memory, enumeration size, panel count) would be
    /// exceeded; nothing partial is returned.
    Resource(String),
    /// Adaptive quadrature did not converge within its panel budget. Carries
    /// the best available estimate and its error bound.
    Quadrature {
        estimate: Complex64,
        error_bound: f64,
        context: String,
    },
    /// A truncated series failed its tail criterion. Carries the partial sum.
    Truncation {
        partial: Complex64,
        context: String,
    },
    Io(std::io::Error),
    Config(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Resource(m) => write!(f, "resource limit: {m}"),
            Error::Quadrature {
                estimate,
                error_bound,
                context,
            } => write!(
                f,
                "quadrature failure in {context}: best estimate {estimate} (error bound {error_bound:.3e})"
            ),
            Error::Truncation { partial, context } => {
                write!(f, "truncation failure in {context}: partial value {partial}")
            }
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Config(m) => write!(f, "config error: {m}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
