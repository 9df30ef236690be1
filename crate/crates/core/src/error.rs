//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by field construction, set validation and analysis.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("field degree must be between {min} and {max}, got {got}")]
    DegreeOutOfRange { min: u32, max: u32, got: u32 },

    #[error("field degree must be even for this operation, got {0}")]
    OddDegree(u32),

    #[error("field degree must be an even integer >= 6 for this construction, got {0}")]
    ConstructionDegree(u32),

    #[error("reduction polynomial 0x{poly:x} is not monic of degree {n}")]
    MalformedPolynomial { poly: u64, n: u32 },

    #[error("reduction polynomial 0x{poly:x} is reducible over GF(2)")]
    ReduciblePolynomial { poly: u64 },

    #[error("element 0x{xi:x} does not generate the multiplicative group")]
    NotPrimitive { xi: u32 },

    #[error("element value 0x{bits:x} does not fit in {n} bits")]
    ElementOutOfRange { bits: u32, n: u32 },

    #[error("mixed field degrees: expected {expected}, got {got}")]
    FieldMismatch { expected: u32, got: u32 },

    #[error("discrete log of zero is undefined")]
    LogOfZero,

    #[error("no built-in field of degree {0}")]
    NoBuiltinField(u32),

    #[error("lookup table has length {got}, expected {expected}")]
    TableLength { expected: usize, got: usize },

    #[error("element 0x{element:x} violates the trace conditions Tr(x) = Tr(1/(x+1)) = 1")]
    TraceCondition { element: u32 },

    #[error("element 0x{element:x} is missing its partner 0x{partner:x} (sets must be unions of pairs {{x, x/(x+1)}})")]
    UnpairedElement { element: u32, partner: u32 },

    #[error("requested {requested} pairs but only {available} are available")]
    PairCountTooLarge { requested: usize, available: usize },

    #[error("unknown named function `{0}` (expected one of G1, G2, G3, GM, F1, F2, F3)")]
    UnknownFunction(String),

    #[error("constructed table failed the permutation check; this indicates a bug")]
    PermutationCheckFailed,

    #[error("Walsh component requires b != 0")]
    ZeroWalshComponent,

    #[error("quadratic coefficients must satisfy a != 0 and b != 0")]
    DegenerateQuadratic,

    #[error("difference a must be nonzero")]
    ZeroDifference,

    #[error("argument must lie outside GF(2), got 0x{0:x}")]
    ArgumentInSubfield(u32),

    #[error("0x{b:x} is not of the form 1 + a + 1/a (requires Tr(1/(b+1)) = 0)")]
    NotInAlphaRange { b: u32 },

    #[error("signature partition requires all functions over the same field")]
    MixedFields,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
