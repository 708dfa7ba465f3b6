use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrimeCharacteristic(u32),
    #[error("modulus {0:?} is reducible over GF({1})")]
    ReducibleModulus(Vec<u32>, u32),
    #[error("invalid modulus {0:?}: {1}")]
    InvalidModulus(Vec<u32>, String),
    #[error("unsupported field size: {0}")]
    UnsupportedSize(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires characteristic 2, got {0}")]
    WrongCharacteristic(u32),
    #[error("element rep {rep} out of range for GF({q})")]
    ElementOutOfRange { rep: u32, q: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("zero vector has no projective point")]
    ZeroVector,
    #[error("vector is not a singular point of the quadric")]
    NonSingularPoint,
    #[error("vertex of the section is not a subspace")]
    VertexNotSubspace,
    #[error("grade {k} out of range 1..={max}")]
    BadGrade { k: usize, max: usize },
    #[error("operation requires grade 2, code has grade {0}")]
    GradeMismatch(usize),
    #[error("matrix is not an alternating form: {0}")]
    NotAlternating(String),
    #[error("recursive weight sum {sum} is not divisible by {divisor}")]
    InconsistentRecursion { sum: u64, divisor: u64 },
    #[error("form lies in the annihilator of the projective system")]
    FormInAnnihilator,
    #[error("no radical of class {0} found")]
    ClassNotFound(String),
    #[error("enumeration of {needed} codewords exceeds budget {budget}; use structural methods")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("column misalignment: {0}")]
    ColumnMisalignment(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
