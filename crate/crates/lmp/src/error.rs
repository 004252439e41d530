//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised by model construction, semantics, logic and composition.
#[derive(Debug, Error)]
pub enum LmpError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown action `{0}`")]
    UnknownAction(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("total mass exceeds one: {0}")]
    MassExceeded(String),
    #[error("operation requires an exact (rational) model")]
    ExactModeRequired,
    #[error("discount factor must lie in (0, 1]")]
    InvalidDiscount,
    #[error("action sets differ: {0}")]
    ActionMismatch(String),
    #[error("product state space too large: {0}")]
    SizeLimit(String),
    #[error("state cap exceeded: {0}")]
    StateCapExceeded(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid depth: {0}")]
    InvalidDepth(String),
    #[error("scope error: {0}")]
    Scope(String),
    #[error("unsupported fragment: {0}")]
    UnsupportedFragment(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Result alias for fallible crate operations.
pub type Result<T> = std::result::Result<T, LmpError>;
