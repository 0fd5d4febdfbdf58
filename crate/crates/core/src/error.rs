use thiserror::Error;

use crate::engines::Comparison;

/// Everything that can go wrong while building, reading or evaluating a network.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("missing `{0}` header")]
    MissingHeader(&'static str),

    #[error("duplicate arc {{{0}, {1}}}")]
    DuplicateArc(usize, usize),

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("probability {value} of arc {{{i}, {j}}} is outside [0, 1]")]
    ProbabilityOutOfRange { i: usize, j: usize, value: f64 },

    #[error("node {node} is outside 1..={n}")]
    EndpointOutOfRange { node: usize, n: usize },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("no arc between nodes {0} and {1}")]
    UnknownArc(usize, usize),

    #[error("vector length {found} does not match arc count {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid minimal path: {0}")]
    InvalidPath(String),

    #[error("minimal path {0} appears more than once")]
    DuplicatePath(String),

    #[error("instance too large: {what} is {found}, limit is {limit}")]
    TooLarge { what: &'static str, found: usize, limit: usize },

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("no connected instance after {0} attempts")]
    RetryBudgetExhausted(usize),

    #[error("engines disagree: {0}")]
    Disagreement(Box<Comparison>),
}

pub type Result<T> = std::result::Result<T, Error>;
