use thiserror::Error;

use crate::oracle::DimacsError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} of {requested} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("arity mismatch: expected {expected} bits, got {found}")]
    ArityMismatch { expected: u32, found: u32 },

    #[error("shape mismatch: {left} qubits vs {right} qubits")]
    ShapeMismatch { left: u32, right: u32 },

    /// The arms cancelled: the squared norm left after summation is below the
    /// null tolerance, i.e. no unexcluded solution survived.
    #[error("null interference: squared norm {norm_sqr:e} is below tolerance {tolerance:e}")]
    NullInterference { norm_sqr: f64, tolerance: f64 },

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("basis index {index} out of range for {n_qubits} qubits")]
    IndexOutOfRange { index: u64, n_qubits: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sweep parameter not found: {0}")]
    ParamNotFound(String),

    #[error(transparent)]
    Dimacs(#[from] DimacsError),
}

impl Error {
    pub fn is_null_interference(&self) -> bool {
        matches!(self, Error::NullInterference { .. })
    }
}
