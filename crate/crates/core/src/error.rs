use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator vanishes identically after substitution")]
    DenominatorVanishes,
    #[error("division by zero")]
    DivisionByZero,
    #[error("too many variables: {0} (at most 7 per polynomial)")]
    TooManyVariables(usize),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown identifier `{name}` at line {line}, column {column}")]
    UnknownIdentifier { name: String, line: usize, column: usize },
    #[error("point (1,0) is excluded from the group on the nodal curve")]
    SingularPoint,
    #[error("n = 0 has no affine image")]
    ZeroScalar,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("δ+2 divides a numerator or denominator of the n = {n} pair")]
    PoleOrZeroAtNode { n: i64 },
    #[error("mixing points of different curve models")]
    FieldMismatch,
    #[error("no sign σ makes the uniformization identities hold for n = {n}")]
    NoSigma { n: i64 },
    #[error("expected an integer, found {0}")]
    NonInteger(String),
    #[error("statement refuted: {0}")]
    Refuted(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
