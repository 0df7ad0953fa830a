use thiserror::Error;

/// Errors raised by the algebra and graph kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands that do not live in the same ring or module.
    #[error("structural mismatch: {0}")]
    Structure(String),

    /// A precondition on a value was violated (non-idempotent, not nil, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration would exceed a configured cap.
    #[error("resource limit exceeded: {what} exceeds the cap of {cap}")]
    Resource { what: String, cap: usize },

    /// Ring or module specification is malformed; one entry per offending item.
    #[error("invalid specification: {}", .0.join("; "))]
    InvalidSpec(Vec<String>),

    /// A self-check on a constructed object failed. Always a bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
