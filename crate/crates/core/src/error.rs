use thiserror::Error;

/// Every failure mode of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotAPrimePower(u64),
    #[error("field order {0} is outside the supported range 2..=65536")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires odd characteristic")]
    EvenCharacteristic,
    #[error("operation requires characteristic 2")]
    OddCharacteristic,
    #[error("quadratic character requested in even characteristic")]
    CharacterInEvenCharacteristic,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("matrix is singular")]
    Singular,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("negative argument {0}")]
    NegativeArgument(i64),
    #[error("rank {0} is odd")]
    OddRank(usize),
    #[error("partition {inner:?} is not contained in {outer:?}")]
    NotNested { outer: Vec<usize>, inner: Vec<usize> },
    #[error("vertex {0} is not adjacent to every other vertex")]
    ApexMissing(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix or support is not symmetric")]
    NotSymmetric,
    #[error("estimated work {estimate} exceeds budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("{what} evaluated to the non-integer {value}")]
    NonIntegral { what: String, value: String },
    #[error("not supported: {0}")]
    Unsupported(String),
    #[error("malformed matrix literal: {0}")]
    MatrixLiteral(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
