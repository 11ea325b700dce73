use thiserror::Error;

/// Errors produced by the model, discretization and study routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// The μ-relation has no root: q lies at or beyond the fold.
    #[error("no root of cosh(mu) = sqrt(2/q) mu for q = {q} (critical value {q_crit})")]
    NoRoot { q: f64, q_crit: f64 },

    /// e^u overflowed while evaluating a residual or Jacobian.
    #[error("diverged state: exp(u) overflows at unknown {index} (u = {value})")]
    Diverged { index: usize, value: f64 },

    /// A direct linear solve hit a (numerically) zero pivot.
    #[error("singular linear system: pivot {pivot:e} at row {row}")]
    Singular { row: usize, pivot: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// A Newton solve inside a study failed.
    #[error("study failed at level {level} (M = {nodes}): {reason}")]
    Study {
        level: usize,
        nodes: usize,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
