use thiserror::Error;

/// Errors raised by the toric height library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero value where a nonzero rational is required")]
    ZeroValue,

    #[error("{0} is not a prime")]
    NotPrime(String),

    #[error("prime factor of {0} does not fit in 64 bits")]
    PrimeTooLarge(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("ambient dimension {0} is not supported")]
    UnsupportedDimension(usize),

    #[error("point lies outside the domain")]
    OutsideDomain,

    #[error("vertex set is not a face of the domain")]
    NotAFace,

    #[error("floor lies above the minimum of the roof")]
    FloorTooHigh,

    #[error("exponent lattice is not the full lattice Z^{0}")]
    NonFullLattice(usize),

    #[error("enumeration of {count} monomials exceeds the cap of {cap}")]
    CapExceeded { count: String, cap: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("product of two logarithmic quantities is not representable")]
    NonLinearProduct,
}

pub type Result<T> = std::result::Result<T, Error>;
