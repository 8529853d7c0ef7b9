use thiserror::Error;

/// Errors raised by the numerical kernels, spaces and checkers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {what} (got {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ODE step failure at r = {r}: {reason}")]
    StepFailure { r: f64, reason: String },

    #[error("quadrature did not converge on [{a}, {b}] after {subdivisions} subdivisions (error estimate {estimate:e})")]
    NoConvergence {
        a: f64,
        b: f64,
        subdivisions: usize,
        estimate: f64,
    },

    #[error("invalid space: {invariant} violated ({detail})")]
    InvalidSpace {
        invariant: &'static str,
        detail: String,
    },

    #[error("unknown builtin space `{0}`")]
    UnknownBuiltin(String),

    #[error("space generation failed (seed {seed}): {reason}")]
    Generation { seed: u64, reason: String },

    #[error("expression parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
