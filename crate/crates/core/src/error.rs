use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: unknown labels, non-total functions, bad tables.
    #[error("validation error: {0}")]
    Validation(String),

    /// A structure failed its law check; the report carries the witness.
    #[error("law violation: {0}")]
    Law(Report),

    #[error("composition error: {0}")]
    Composition(String),

    /// Boundary functions do not fit the matrices of a 2-cell.
    #[error("typing error: {0}")]
    Typing(String),

    /// A materialized carrier or enumeration would exceed the configured cap.
    #[error("resource error: {what} needs {needed} entries, cap is {cap}")]
    Resource { what: String, needed: u128, cap: u64 },

    /// Two routes that must agree did not. Always a bug.
    #[error("internal invariant failure: {0}")]
    Invariant(String),

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
