use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different rings, or an argument has the wrong shape.
    #[error("structural error: {0}")]
    Structural(String),

    /// A configured budget (pairs, generators) was exceeded.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("ideal is not primary to the maximal ideal: {0}")]
    NotPrimary(String),

    #[error("no stabilization detected within the table (n <= {nmax})")]
    NoStabilization { nmax: usize },

    #[error("J is not a reduction of I within bound {bound}")]
    NotAReductionWithinBound { bound: usize },

    #[error("minimal reduction search exhausted after {trials} trials")]
    SearchExhausted { trials: usize },

    #[error("regularity not established: {0}")]
    RegularityNotEstablished(String),

    #[error("containment violated: {0}")]
    Containment(String),

    #[error("hilbert data has no rational form")]
    MissingRationalForm,

    #[error("table too short: need n <= {needed}, have n <= {have}")]
    InsufficientDepth { needed: usize, have: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    /// A consistency check failed; this indicates a bug, never a mathematical outcome.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}
