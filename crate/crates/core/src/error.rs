use thiserror::Error;

/// Errors produced by the evaluation pipelines and their building blocks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MmeError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The supplied prime pool multiplies out to at most the requested bound.
    #[error("prime pool exhausted: product of {pool_len} primes does not exceed a {bound_bits}-bit bound")]
    PoolExhausted { pool_len: usize, bound_bits: u64 },

    /// A reconstructed evaluation fell outside the promised `2^s` magnitude.
    #[error("evaluation {index} has {bits} bits, outside the declared bound of {bound} bits")]
    BoundViolation { index: usize, bits: u64, bound: u64 },

    /// No convergent approximates the input closely enough.
    #[error("rational reconstruction failed: {0}")]
    ReconstructionFailed(String),

    #[error("backend `{backend}` failed: {message}")]
    Backend { backend: String, message: String },
}

impl MmeError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        MmeError::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = MmeError> = std::result::Result<T, E>;
