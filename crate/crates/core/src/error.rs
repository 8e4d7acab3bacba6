use std::fmt;

use thiserror::Error;

/// Malformed text input (polynomials, words, fixtures).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("enumeration passed the cap of {cap} elements (group infinite or too large)")]
    CapExceeded { cap: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("weight function mismatch: {0}")]
    WeightMismatch(String),
    #[error("the standard pairing is only defined for split weights (L = length)")]
    UnsupportedWeights,
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error(
        "not a Coxeter embedding: images generate {generated} elements, abstract folded group has {folded}"
    )]
    NotACoxeterEmbedding { generated: usize, folded: usize },
    #[error("no classification row matches: {0}")]
    NoMatchingCase(String),
    #[error("unknown group element `{0}`")]
    UnknownGroupElement(String),
    #[error("character kind unavailable: {0}")]
    KindUnavailable(String),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("inconsistent character action: {0}")]
    InconsistentAction(String),
    #[error("cycle type {cycle_type:?} does not sum to {total}")]
    PartitionMismatch { cycle_type: Vec<usize>, total: usize },
    #[error("invalid fixture: {0}")]
    InvalidFixture(String),
    #[error("verification failed:\n{0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
