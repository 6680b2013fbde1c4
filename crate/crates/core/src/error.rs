use thiserror::Error;

/// Errors raised by the scalar, character-sum, geometry and bound layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("value {value} is not in Z[1/{p}]")]
    NotPAdicRational { value: String, p: u64 },
    #[error("conductor level {level} exceeds the configured cap {max_level}")]
    LevelExceeded { level: u32, max_level: u32 },
    #[error("{value} is not a unit modulo {p}")]
    NotAUnit { value: String, p: u64 },
    #[error("weight integral diverges in coordinate {coord} (exponent {exponent})")]
    Divergent { coord: usize, exponent: i64 },
    #[error("oracle level {given} is below the exactness level {required}")]
    OracleLevelTooLow { given: u32, required: u32 },
    #[error("cube meets the divisor {{prod y_i = 0}} in coordinate {coord}")]
    DivisorTouched { coord: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed stratum: {0}")]
    MalformedStratum(String),
    #[error("unsupported map: {0}")]
    UnsupportedMap(String),
    #[error("polynomial degree {degree} exceeds the limit {limit}")]
    DegreeTooHigh { degree: usize, limit: usize },
    #[error("degenerate parametrization: {0}")]
    DegenerateParametrization(String),
    #[error("sample budget {budget} exceeds the limit {limit}")]
    BudgetExceeded { budget: usize, limit: usize },
    #[error("zero frequency")]
    ZeroFrequency,
}

pub type Result<T> = std::result::Result<T, Error>;
