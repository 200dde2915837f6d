use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Location and cause of a syntax error in expression, form, simplex or chain text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseDiagnostic {
    /// Byte offset into the input; always `<= input.len()`.
    pub offset: usize,
    pub message: String,
    /// What the parser would have accepted at `offset`.
    pub expected: String,
}

impl ParseDiagnostic {
    pub(crate) fn new(offset: usize, message: impl Into<String>, expected: impl Into<String>) -> Self {
        Self {
            offset,
            message: message.into(),
            expected: expected.into(),
        }
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at offset {}: {} (expected {})",
            self.offset, self.message, self.expected
        )
    }
}

impl std::error::Error for ParseDiagnostic {}

/// Broad classification used by the command line front end to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Math,
    Convergence,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error {0}")]
    Parse(ParseDiagnostic),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integrand is not positive at x = {x} (value {value}); use the signed variant")]
    NonPositiveIntegrand { x: f64, value: f64 },

    #[error("degenerate partition: factor 1 + g(c)·Δ = {factor} at c = {at}")]
    DegeneratePartition { at: f64, factor: f64 },

    #[error("degenerate sign structure: {0}")]
    DegenerateSign(String),

    #[error("non-integrable singularity: {0}")]
    NonIntegrableSingularity(String),

    #[error("quadrature budget of {budget} cells exhausted")]
    BudgetExhausted { budget: usize },

    #[error("adaptive refinement did not converge near x = {at}")]
    NotConverged { at: f64 },

    #[error("coefficient on {slot} evaluates to {value}, which is not positive")]
    PositivityViolation { slot: String, value: f64 },

    #[error("degree overflow: degree {degree} exceeds dimension {dim}")]
    DegreeOverflow { degree: usize, dim: usize },

    #[error("degree underflow: the boundary of a 0-simplex is undefined")]
    DegreeUnderflow,

    #[error("degenerate simplex (Gram determinant {gram:e})")]
    DegenerateSimplex { gram: f64 },
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::Domain(_) => "DomainError",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::NonPositiveIntegrand { .. } => "NonPositiveIntegrand",
            Error::DegeneratePartition { .. } => "DegeneratePartition",
            Error::DegenerateSign(_) => "DegenerateSign",
            Error::NonIntegrableSingularity(_) => "NonIntegrableSingularity",
            Error::BudgetExhausted { .. } => "BudgetExhausted",
            Error::NotConverged { .. } => "NotConverged",
            Error::PositivityViolation { .. } => "PositivityViolation",
            Error::DegreeOverflow { .. } => "DegreeOverflow",
            Error::DegreeUnderflow => "DegreeUnderflow",
            Error::DegenerateSimplex { .. } => "DegenerateSimplex",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) | Error::InvalidArgument(_) => ErrorClass::Usage,
            Error::NonIntegrableSingularity(_) | Error::BudgetExhausted { .. } | Error::NotConverged { .. } => {
                ErrorClass::Convergence
            }
            _ => ErrorClass::Math,
        }
    }
}

impl From<ParseDiagnostic> for Error {
    fn from(d: ParseDiagnostic) -> Self {
        Error::Parse(d)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
