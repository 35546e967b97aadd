use thiserror::Error;

/// Errors raised by instance construction, verifiers, solvers and reductions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("assignment uses a symbol outside the alphabet of variable {var}")]
    AlphabetMismatch { var: usize },
    #[error("assignment covers {found} variables, instance has {expected}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("invalid sequence at step {step}")]
    InvalidSequence { step: usize },
    #[error("sequence is empty")]
    EmptySequence,
    #[error("operation requires arity {expected}, instance has arity {found}")]
    ArityError { expected: usize, found: usize },
    #[error("state space of {states} exceeds the configured cap of {cap}")]
    TooLarge { states: u128, cap: u64 },
    #[error("order must list each differing variable exactly once")]
    BadOrder,
    #[error("set index {index} out of range ({len} sets)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("endpoint assignment does not satisfy the instance")]
    NotSatisfying,
    #[error("index set is not a cover")]
    NotACover,
    #[error("no acceptable partition after {0} attempts")]
    RetriesExhausted(usize),
    #[error("vertex {vertex} has degree above the supplied bound")]
    DegreeBound { vertex: usize },
    #[error("gadget for constraint {constraint} needs 2^{bits} ground elements, cap is {cap}")]
    GadgetTooLarge {
        constraint: usize,
        bits: usize,
        cap: u64,
    },
    #[error("circuit has no satisfying assignment")]
    Unsatisfiable,
    #[error("source endpoint assignments must satisfy the instance")]
    EndpointNotSatisfying,
    #[error("source sequence must be valid with every step satisfying: {0}")]
    InvalidSourceSequence(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("value outside the admissible range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
