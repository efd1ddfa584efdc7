use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("unsupported curve: {0}")]
    UnsupportedCurve(String),
    #[error("undefined valuation: {0}")]
    UndefinedValuation(String),
    #[error("curve mismatch: {0}")]
    CurveMismatch(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("not on jacobian: {0}")]
    NotOnJacobian(String),
    #[error("malformed divisor: {0}")]
    Malformed(String),
    #[error("empty divisor has no c-polynomial")]
    EmptyDivisor,
    #[error("point not on curve")]
    NotOnCurve,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("self-intersection requested")]
    SelfIntersection,
    #[error("incomplete fiber data: {0}")]
    IncompleteData(String),
    #[error("map undefined: {0}")]
    MapUndefined(String),
    #[error("not in image: {0}")]
    NotInImage(String),
    #[error("unsupported denominator {0}")]
    UnsupportedDenominator(String),
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
