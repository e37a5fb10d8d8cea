use thiserror::Error;

/// Errors reported by the evaluators and oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("half-width list is empty")]
    EmptyHalfWidths,
    #[error("non-positive half-width a_{index} = {value}")]
    NonPositiveHalfWidth { index: usize, value: String },
    #[error("non-finite value {0}")]
    NonFinite(String),
    #[error("{n} half-widths given, at most {max} are supported")]
    TooManyComponents { n: usize, max: usize },
    #[error("mixed numeric modes: exact and float values in one computation")]
    MixedModes,
    #[error("power r = {r} exceeds n = {n}")]
    PowerOutOfRange { r: u32, n: usize },
    #[error("malformed number {0:?}")]
    MalformedNumber(String),
    #[error("decimal {0:?} is not accepted in exact mode; write it as p/q or use float mode")]
    DecimalInExactMode(String),
    #[error("{op} requires at least {min} half-widths, got {n}")]
    TooFewComponents { op: &'static str, min: usize, n: usize },
    #[error("tolerance {0:e} is not achievable")]
    ToleranceTooSmall(f64),
    #[error("sample count must be positive")]
    ZeroSamples,
    #[error("sign pattern {bits:#b} does not fit in {n} bits")]
    InvalidSignVector { n: u32, bits: u64 },
    #[error("quadrature would need {panels} panels, over the budget of {budget}")]
    QuadratureBudget { panels: u64, budget: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
