use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("extension degree must be at least 1")]
    DegreeZero,
    #[error("field order {0} exceeds 2^16")]
    FieldTooLarge(u64),
    #[error("GF({p}^{sub}) is not a subfield of GF({p}^{ext})")]
    NotASubfield { p: u32, sub: u32, ext: u32 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("invalid twist exponent {0}")]
    ThetaMismatch(u32),
    #[error("form is degenerate")]
    DegenerateForm,
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("enumeration cap {cap} exceeded after {partial} elements")]
    CapExceeded { cap: usize, partial: usize },
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("characteristic {p} equals the group prime {r}")]
    BadCharacteristic { p: u32, r: u32 },
    #[error("field lacks the required roots of unity: {0}")]
    MissingRoots(String),
    #[error("module is not homogeneous")]
    NotHomogeneous,
    #[error("multiplicity is one, nothing to split")]
    MultiplicityOne,
    #[error("tensor split failed: {0}")]
    SplitFailed(String),
    #[error("no certificate found: {0}")]
    CertificateNotFound(String),
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
