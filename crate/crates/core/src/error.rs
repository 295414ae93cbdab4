use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or mathematically invalid input (non-prime modulus,
    /// non-squarefree polynomial, rank-deficient basis, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Vectors or matrices whose shapes do not fit together.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// `index_in` was asked about a lattice that is not contained in the other.
    #[error("not a sublattice: {0}")]
    NotSublattice(String),

    /// A configured resource guard (enumeration cap, search budget, desk-scale
    /// size limit) was exceeded. Never a silent truncation.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A computation contradicted a structural claim it was verifying.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
