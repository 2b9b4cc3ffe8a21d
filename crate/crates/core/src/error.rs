use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A function was evaluated outside the set where it is defined
    /// (square root of a non-positive value, `u²` at the origin, ...).
    #[error("domain error in {what} at {at}")]
    Domain { what: &'static str, at: f64 },

    /// Argument outside a configured evaluation range.
    #[error("{what}: argument {at} outside [-{limit}, {limit}]")]
    Range {
        what: &'static str,
        at: f64,
        limit: f64,
    },

    /// Adaptive quadrature ran out of subdivisions.
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions: \
         worst interval [{worst_a}, {worst_b}] with error estimate {worst_error:e}"
    )]
    Quadrature {
        subdivisions: usize,
        worst_a: f64,
        worst_b: f64,
        worst_error: f64,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid configuration: {field}: {message}")]
    Config { field: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
