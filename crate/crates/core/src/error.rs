use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("leading coefficient is not invertible")]
    NotInvertible,
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("unsupported character with discriminant {0}")]
    UnsupportedCharacter(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid eta quotient: {0}")]
    InvalidEtaQuotient(String),
    #[error("weight {0} is not an integer")]
    NonIntegralWeight(String),
    #[error("E3[{chi},{psi},*] has even total parity")]
    Parity { chi: i64, psi: i64 },
    #[error("precision too low: {0}")]
    Precision(String),
    #[error("not in space span at this precision (first mismatch at q^{0})")]
    NotInSpan(usize),
    #[error("linear system has no unique solution")]
    NoUniqueSolution,
    #[error("not normalized: a(1) = {0}")]
    NotNormalized(String),
    #[error("invalid exponent vector {0:?}: entries must be non-negative and sum to 6")]
    InvalidExponentVector([u32; 4]),
    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),
    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
