use alloc::string::String;

/// Errors raised by the algebraic routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is not irreducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("unsupported extension degree {0}")]
    UnsupportedDegree(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires a finite field")]
    NotFinite,
    #[error("operands belong to different field contexts")]
    MixedContexts,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("positive-dimensional base locus: {0}")]
    PositiveDimensional(String),
    #[error("not Galois-stable: {0}")]
    NotGaloisStable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("class limit of {0} exceeded")]
    ClassLimit(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = core::result::Result<T, Error>;
