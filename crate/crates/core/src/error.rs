use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the evaluation point")]
    Pole,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("chart mismatch: dimension {left} vs {right}")]
    ChartMismatch { left: usize, right: usize },
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("invalid multi-index {indices:?}: {reason}")]
    Index { indices: Vec<usize>, reason: String },
    #[error("structure is not regular (omega ^ Omega^n vanishes identically)")]
    NotRegular,
    #[error("structure is not almost-cosymplectic-contact (dOmega != 0)")]
    NotAlmostCosymplecticContact,
    #[error("singular linear system")]
    Singular,
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("duality not established: {0}")]
    DualityFailed(String),
    #[error("precondition failed: {}", .0.join(", "))]
    Precondition(Vec<String>),
    #[error("unknown catalog entry `{0}`")]
    UnknownExample(String),
    #[error("internal error: {0}")]
    Internal(String),
}
