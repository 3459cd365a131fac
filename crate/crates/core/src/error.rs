//! Library error type.

use thiserror::Error;

/// Errors raised by the arithmetic, search and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different number fields")]
    FieldMismatch,
    #[error("element is not integral at p = {0}")]
    NotPIntegral(u64),
    #[error("prime {0} divides the discriminant")]
    RamifiedPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("zero element where a unit is required")]
    ZeroElement,
    #[error("residue maps use different primes")]
    InconsistentPrimes,
    #[error("precision cap reached before the question was decided")]
    Indeterminate,
    #[error("eigenvalue has modulus 1 at every usable embedding")]
    UnsupportedEigenvalue,
    #[error("element is a root of unity")]
    RootOfUnity,
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error("element lies in the rational span; additive separation does not apply")]
    NotApplicable,
    #[error("integer factorization limit reached")]
    FactorizationLimit,
    #[error("subgroups share a fixed point")]
    SharedFixedPoint,
    #[error("matrix is parabolic or central")]
    NotNonparabolic,
    #[error("enumeration cap exceeded ({0} elements)")]
    EnumerationCap(usize),
    #[error("unsupported certificate version {0}")]
    UnknownVersion(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
