use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{n} is not square-free ({prime}^2 divides it)")]
    NotSquarefree { n: u64, prime: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("Kronecker symbol (0/0) is undefined")]
    Undefined,

    #[error("moduli {0} and {1} are not coprime")]
    NonCoprimeModuli(u64, u64),

    #[error("product of moduli does not fit in 64 bits")]
    ModulusOverflow,

    #[error("{p} is not congruent to {expected} modulo {modulus}")]
    WrongResidueClass { p: u64, expected: u64, modulus: u64 },

    #[error("{0} is not a valid discriminant of an indefinite form (positive non-square, 0 or 1 mod 4)")]
    InvalidDiscriminant(i64),

    #[error("forms have different discriminants ({0} and {1})")]
    DiscriminantMismatch(i64, i64),

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("the prime 2 has no starred counterpart")]
    EvenPrime,

    #[error("radicand {0} is even; only odd radicands are supported here")]
    EvenRadicand(u64),

    #[error("(1/4) * {0} is not an integer")]
    NonIntegral(u64),

    #[error("rank {rank} is impossible for a 2-group of order {order}")]
    Inconsistent { rank: u32, order: u64 },

    #[error("square test could not certify rounding at {bits} extra bits of precision")]
    PrecisionExhausted { bits: u32 },

    #[error("discriminant has {0} prime divisors; only 3 or 4 are tabulated")]
    OutOfTable(usize),

    #[error("residue pattern of {0} does not match the classifier's hypothesis")]
    WrongShape(u64),

    #[error("target residue {0} is not in {{1, 3, 5, 7}}")]
    InvalidResidue(u64),

    #[error("symbol constraint ({k},{j}) is invalid: {reason}")]
    InvalidSymbol { k: usize, j: usize, reason: &'static str },

    #[error("no prime found for position {position} within {bound} steps")]
    NotFoundWithinBound { position: usize, bound: u64 },

    #[error("discriminant {discriminant} exceeds the oracle limit {limit}")]
    OracleRangeExceeded { discriminant: u64, limit: u64 },

    #[error("unit norm {given} disagrees with the sign class of discriminant {discriminant}")]
    UnitNormMismatch { discriminant: i64, given: i8 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
