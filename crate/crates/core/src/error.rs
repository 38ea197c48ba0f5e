use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Error)]
pub enum AkltError {
    /// A tensor contraction was asked to pair axes of different lengths.
    #[error("contraction mismatch: axis {axis_a} of left tensor (len {len_a}) vs axis {axis_b} of right tensor (len {len_b})")]
    ContractMismatch {
        axis_a: usize,
        len_a: usize,
        axis_b: usize,
        len_b: usize,
    },
    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A dense computation would exceed the desk-scale capacity bounds.
    /// `needed` saturates at `u128::MAX` when the true count is larger still.
    #[error("capacity exceeded: {what} needs {}{needed}, limit {limit}", if *needed == u128::MAX { "at least " } else { "" })]
    Capacity {
        what: &'static str,
        needed: u128,
        limit: u64,
    },
    /// A numeric routine failed its internal accuracy check.
    #[error("numeric check failed: {0}")]
    Numeric(String),
    /// A cross-validation clause did not hold.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, AkltError>;
