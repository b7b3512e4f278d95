//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),

    #[error("not a complex: boundary composition is nonzero entering degree {degree}")]
    NotAComplex { degree: i64 },

    #[error("boundaries not contained in cycles")]
    BoundariesNotContained,

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("wrong ring: {0}")]
    WrongRing(String),

    #[error("instance too large for oracle: {0}")]
    OracleTooLarge(String),

    #[error("does not commute with boundaries at degree {degree}")]
    NotChainMap { degree: i64 },

    #[error("invalid level: {0}")]
    InvalidLevel(String),

    #[error("unsupported ring: modulus {0} is not a prime power")]
    UnsupportedRing(String),

    #[error("inconsistent cardinality table: {0}")]
    InconsistentTable(String),

    #[error("no elementary decomposition reproduces the homology: {0}")]
    NotDecomposable(String),

    #[error("level too small — increase r: {0}")]
    LevelTooSmall(String),

    #[error("inconsistent prime tables: {0}")]
    InconsistentPrimeTables(String),

    #[error("outside fixture domain: {0}")]
    OutsideFixtureDomain(String),

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("wrong parity: {0}")]
    WrongParity(String),

    #[error("descriptor incomplete: {0}")]
    DescriptorIncomplete(String),

    #[error("not a configuration: multiplicity exceeds 1 at {0}")]
    NotAConfiguration(String),

    #[error("not enough particles: requested {requested} from a multiset of size {size}")]
    NotEnoughParticles { requested: usize, size: usize },

    #[error("inhomogeneous chain: terms of size {0} and {1} mixed")]
    InhomogeneousChain(usize, usize),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
