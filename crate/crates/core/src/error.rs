use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("invalid characteristic form: coordinate {index} has the wrong parity")]
    InvalidCharacteristic { index: usize },

    #[error("invalid Wu class: coordinate {index} violates the parity condition")]
    InvalidWuClass { index: usize },

    #[error("bilinear form is degenerate")]
    Degenerate,

    #[error("value is not integral: {0}")]
    NotIntegral(String),

    #[error("vector does not lie in the dual lattice")]
    NotInDualLattice,

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("invalid pairing: {0}")]
    InvalidPairing(String),

    #[error("inconsistent quadratic data at generator {index}: {detail}")]
    InconsistentGenerator { index: usize, detail: String },

    #[error("invalid group isomorphism: {0}")]
    InvalidIso(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quadratic function is not over the linking pairing of the lattice: {0}")]
    PairingMismatch(String),

    #[error("no characteristic form presents the given quadratic function")]
    NoSolution,

    #[error("group of order {actual} exceeds the configured bound {limit}")]
    SizeBound { limit: u64, actual: String },

    #[error("integer too large for this operation: {0}")]
    Overflow(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_size_bound(&self) -> bool {
        matches!(self, Error::SizeBound { .. } | Error::Overflow(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
