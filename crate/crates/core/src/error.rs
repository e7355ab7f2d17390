use num_complex::Complex64;

/// Errors raised by series construction, evaluation and the theorem checks.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter record violates one of its invariants. The message names it.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("gamma function pole at z = {0}")]
    Pole(Complex64),

    /// A point or series falls outside the domain an operation accepts.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series tail not certified within {max_terms} terms at z = {z}")]
    ToleranceNotMet { z: Complex64, max_terms: usize },

    /// The denominator of a geometric functional nearly vanishes at `z`.
    #[error("near-zero denominator |{denominator}| at z = {z}")]
    NearZeroDenominator { z: Complex64, denominator: f64 },

    #[error("{theorem} does not apply to {family} parameters")]
    FamilyMismatch {
        theorem: &'static str,
        family: &'static str,
    },

    #[error("sufficient condition for {what} not satisfied (slack {slack})")]
    ConditionNotSatisfied { what: String, slack: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
