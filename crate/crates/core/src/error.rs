use thiserror::Error;

use crate::dataset::Sample;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid header: expected `{expected}`, found `{found}`")]
    Header { expected: String, found: String },

    #[error("missing column: {0}")]
    MissingColumn(&'static str),

    #[error("line {line}: {message}")]
    Malformed { line: u64, message: String },

    #[error("line {line}: score {score} out of range [{min}, {max}]")]
    ScoreOutOfRange {
        line: u64,
        score: f64,
        min: f64,
        max: f64,
    },

    #[error("line {line}: outcome must be 0 or 1, found `{value}`")]
    InvalidOutcome { line: u64, value: String },

    #[error("line {line}: treatment must be 0 or 1, found `{value}`")]
    InvalidTreatment { line: u64, value: String },

    #[error("empty dataset")]
    EmptyDataset,

    #[error("empty {0} sample")]
    EmptySample(Sample),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("{metric} is undefined: {reason}")]
    Undefined {
        metric: &'static str,
        reason: String,
    },

    #[error("invalid rate {0}: must lie in (0, 1]")]
    InvalidRate(f64),

    #[error("baseline row sums {baseline:?} do not match class priors {priors:?}")]
    MismatchedPriors {
        priors: [f64; 2],
        baseline: [f64; 2],
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}: {message}")]
    InvalidSpec { path: String, message: String },

    #[error("internal consistency violated: {what} ({lhs} vs {rhs})")]
    Inconsistency {
        what: &'static str,
        lhs: f64,
        rhs: f64,
    },

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    /// True for violations of internal invariants, as opposed to bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistency { .. })
    }

    pub(crate) fn undefined(metric: &'static str, reason: impl Into<String>) -> Self {
        Error::Undefined {
            metric,
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Checks that two routes to the same quantity agree.
pub(crate) fn check_identity(what: &'static str, lhs: f64, rhs: f64, scale: f64) -> Result<()> {
    let tol = crate::IDENTITY_TOL * (1.0 + scale.abs());
    if (lhs - rhs).abs() <= tol {
        Ok(())
    } else {
        Err(Error::Inconsistency { what, lhs, rhs })
    }
}
