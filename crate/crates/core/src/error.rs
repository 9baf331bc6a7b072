use thiserror::Error;

/// Errors raised by the geometric and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A point or parameter lies outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation would evaluate a map at its pole.
    #[error("pole: {0}")]
    Pole(String),

    /// A multivalued map was asked for a value on its branch cut.
    #[error("branch cut: {0}")]
    Branch(String),

    /// An iterative solver ran out of iterations.
    #[error("no convergence after {iterations} iterations (last residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    /// A documented precondition failed.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A classification rule could not reach a decision.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// A serialized descriptor is malformed.
    #[error("invalid descriptor: {0}")]
    Descriptor(String),
}

pub type Result<T> = std::result::Result<T, Error>;
