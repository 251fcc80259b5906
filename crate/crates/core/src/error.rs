use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument sits on a pole of the Gamma function.
    Pole { x: f64 },
    /// Argument outside the domain of the operation.
    Domain { what: &'static str, value: f64 },
    /// Stability index not strictly inside (0, 1).
    InvalidIndex(f64),
    /// Invalid model or policy parameter.
    Parameter { what: &'static str, value: f64 },
    /// Point below the lower edge of a support.
    BelowSupport { x: f64, edge: f64 },
    /// The bracket handed to a root finder has no sign change.
    NoSignChange { lo: f64, hi: f64 },
    /// Iteration or term cap reached before the tolerance was met.
    NonConvergence {
        what: &'static str,
        iterations: usize,
    },
    /// Series terms kept growing; the divergence guard tripped.
    Divergence { what: &'static str, terms: usize },
    /// The H-function existence conditions exclude this argument.
    OutOfDomain { z: f64, beta: f64 },
    /// Requested operation not supported for these H-function parameters.
    Unsupported(&'static str),
    /// Contour truncation leaves a tail larger than the target tolerance.
    TruncationInsufficient { truncation: f64, tail_bound: f64 },
    /// Adaptive quadrature hit its interval cap.
    Quadrature { value: f64, error: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { x } => write!(f, "Gamma function pole at {x}"),
            Error::Domain { what, value } => write!(f, "{what}: {value} is outside the domain"),
            Error::InvalidIndex(a) => {
                write!(f, "stability index {a} must lie strictly inside (0, 1)")
            }
            Error::Parameter { what, value } => write!(f, "invalid parameter {what} = {value}"),
            Error::BelowSupport { x, edge } => {
                write!(f, "{x} lies below the support edge {edge}")
            }
            Error::NoSignChange { lo, hi } => {
                write!(f, "no sign change over the bracket [{lo}, {hi}]")
            }
            Error::NonConvergence { what, iterations } => {
                write!(f, "{what} did not converge after {iterations} iterations")
            }
            Error::Divergence { what, terms } => {
                write!(f, "{what}: terms grew for {terms} consecutive steps")
            }
            Error::OutOfDomain { z, beta } => write!(
                f,
                "H-function argument {z} outside its existence domain (beta = {beta})"
            ),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
            Error::TruncationInsufficient {
                truncation,
                tail_bound,
            } => write!(
                f,
                "truncation height {truncation} leaves a tail bound of {tail_bound}"
            ),
            Error::Quadrature { value, error } => write!(
                f,
                "quadrature interval cap reached (value {value}, error estimate {error})"
            ),
        }
    }
}

impl core::error::Error for Error {}
