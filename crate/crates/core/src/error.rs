use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field size {0} is larger than the supported maximum of {max}", max = crate::field::MAX_FIELD_SIZE)]
    FieldTooLarge(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("no built-in modulus for q = {0}; supply one explicitly")]
    NoDefaultModulus(u64),
    #[error("element index {index} is out of range for a field of size {q}")]
    ElementOutOfRange { index: u32, q: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("expected a unit (valuation 0), got valuation {0}")]
    NotAUnit(i64),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("reduction did not terminate within {0} iterations")]
    IterationCap(usize),
    #[error("insufficient window: {0}")]
    InsufficientWindow(String),
    #[error("graphs are over different fields (q = {0} vs q = {1})")]
    QMismatch(u64, u64),
    #[error("projection is inconsistent on the fibre over c{0}")]
    InconsistentFibre(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
