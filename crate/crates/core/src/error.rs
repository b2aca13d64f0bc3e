use thiserror::Error;

/// Failures reported by the exact kernels and the verification layers built on them.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division is not exact: {dividend} is not a multiple of {divisor}")]
    NonExactDivision { dividend: String, divisor: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("denominator vanishes at specialization ({factor})")]
    PoleAtSpecialization { factor: String },

    #[error("pole of order {order} at {pole}; only simple poles are supported")]
    UnsupportedPoleOrder { pole: String, order: u32 },

    #[error("degenerate patch: variable `{tag}` has zero weight")]
    DegeneratePatch { tag: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("structural failure: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;
