use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the domain of the function.
    Domain { what: &'static str, value: f64 },
    /// A structural parameter violates its documented constraint.
    InvalidParameter(String),
    /// Iteration or subdivision limit reached before the tolerance was met.
    NonConvergence { what: &'static str, estimate: f64 },
    /// A truncation cap leaves an analytic tail bound above tolerance.
    CapTooSmall { cap: usize, bound: f64, tol: f64 },
    /// Two independent evaluation routes disagree.
    Disagreement { what: &'static str, primary: f64, check: f64 },
    /// A numerical hypothesis check failed.
    HypothesisViolation(String),
    /// The function could not be evaluated at a sampled point.
    Evaluation { x: f64, detail: String },
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64) -> Self {
        Error::Domain { what, value }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value})"),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NonConvergence { what, estimate } => {
                write!(f, "{what} did not converge (error estimate {estimate:e})")
            }
            Error::CapTooSmall { cap, bound, tol } => {
                write!(f, "cap {cap} too small: truncation bound {bound:e} exceeds tolerance {tol:e}")
            }
            Error::Disagreement { what, primary, check } => {
                write!(f, "{what}: methods disagree ({primary} vs {check})")
            }
            Error::HypothesisViolation(msg) => write!(f, "hypothesis violation: {msg}"),
            Error::Evaluation { x, detail } => write!(f, "evaluation failed at {x}: {detail}"),
        }
    }
}

impl core::error::Error for Error {}
