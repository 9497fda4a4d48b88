use thiserror::Error;

/// Errors raised by the arithmetic kernel and the OM algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmError {
    #[error("zero has no finite p-adic valuation")]
    ZeroValuation,
    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("divisor must be monic of positive degree")]
    NotMonicDivisor,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not square-free")]
    NotSquareFree,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("polynomial is reducible over the top floor")]
    Reducible,
    #[error("y cannot define a floor above the prime field")]
    TrivialGenerator,
    #[error("no monic irreducible of degree {degree} other than y exists over floor {floor}")]
    NoIrreducible { floor: usize, degree: usize },
    #[error("invalid type data: {0}")]
    InvalidType(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("leaf index {0} is not part of this forest")]
    ForeignLeaf(usize),
    #[error("a leaf has no resultant with itself")]
    SameLeaf,
    #[error("value escalation gave up after {0} lifting loops")]
    NonTerminating(usize),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, OmError>;
