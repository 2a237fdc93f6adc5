//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {requested} exceeds the configured cap {cap}")]
    ConductorCap { requested: u32, cap: u32 },
    #[error("embedding index {index} is not coprime to conductor {conductor}")]
    InvalidEmbedding { index: i64, conductor: u32 },
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u64, cap: u64 },
    #[error("constant map rejected: maps must be dominant")]
    ConstantMap,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("u is not an inner factor of f")]
    NoFactor,
    #[error("maps do not commute")]
    NonCommuting,
    #[error("maps have unequal degrees {0} and {1}")]
    UnequalDegree(usize, usize),
    #[error("budget exhausted after {0} steps")]
    BudgetExhausted(usize),
    #[error("no finite order up to {0}")]
    OrderNotFound(u32),
    #[error("exact verification failed: {0}")]
    VerificationMismatch(String),
    #[error("no equal-degree iterate pair under the degree cap")]
    NoDegreeMatch,
    #[error("degenerate composition: zero resultant")]
    DegenerateComposition,
    #[error("orbit closure did not stabilize within {0} steps")]
    NotStabilized(usize),
    #[error("budget of {0} points exceeded")]
    BudgetExceeded(usize),
    #[error("singular curve: 4a^3 + 27b^2 = 0")]
    SingularCurve,
    #[error("root finding did not converge")]
    RootFinding,
    #[error("not invariant: an image escapes the point set")]
    NotInvariant,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("{query} is not a power of the reference base {base}")]
    NotAPower { base: u64, query: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::DegreeCap { .. }
            | Error::ConductorCap { .. }
            | Error::BudgetExhausted(_)
            | Error::BudgetExceeded(_)
            | Error::NotStabilized(_)
            | Error::OrderNotFound(_)
            | Error::NoDegreeMatch => 3,
            Error::Internal(_) | Error::VerificationMismatch(_) => 1,
            _ => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
