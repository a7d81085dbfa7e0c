use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coefficient function is not defined on the frame's measure space")]
    SpaceMismatch,

    #[error("frames are over different fields")]
    FieldMismatch,

    #[error("frames have different exponents ({0} vs {1})")]
    ExponentMismatch(f64, f64),

    #[error("exponent p must satisfy 1 < p < inf, got {0}")]
    InvalidExponent(f64),

    #[error("atom {index} has non-positive or non-finite weight {weight}")]
    InvalidWeight { index: usize, weight: f64 },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("real frame carries a non-real entry in {0}")]
    NotReal(&'static str),

    #[error("theorem excludes x = 0")]
    ZeroVector,

    #[error("degenerate pair: cross-coherence is zero, the bound is undefined")]
    DegenerateCoherence,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no support of cardinality <= {max_card} represents the target")]
    Infeasible { max_card: usize },

    #[error("enumeration guard exceeded: {count} candidates > limit {limit}")]
    GuardExceeded { count: u128, limit: u128 },

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible { .. } => 3,
            Error::GuardExceeded { .. } => 4,
            Error::Usage(_) | Error::Io(_) | Error::Json(_) | Error::Csv(_) => 1,
            _ => 2,
        }
    }
}
