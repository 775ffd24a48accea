use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op} did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence {
        op: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// The result exceeds the representable range; `sign` carries the sign
    /// of the infinite result.
    #[error("overflow in {op} (signed infinity {sign:+})")]
    Overflow { op: &'static str, sign: f64 },

    #[error("pole of {op} at {at}")]
    Pole { op: &'static str, at: String },

    #[error("accuracy failure in {op}: estimated error {error_estimate:e} exceeds tolerance {tolerance:e} (value {value:e})")]
    Accuracy {
        op: &'static str,
        value: f64,
        error_estimate: f64,
        tolerance: f64,
    },

    #[error("{op}: index {index} outside supported range 0..={max}")]
    Range {
        op: &'static str,
        index: usize,
        max: usize,
    },

    #[error("reference data integrity failure: {0}")]
    Integrity(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    /// True for failures that mean "computed, but not to the requested
    /// accuracy", as opposed to invalid input.
    pub fn is_accuracy_failure(&self) -> bool {
        matches!(self, Error::Accuracy { .. } | Error::Convergence { .. })
    }
}
