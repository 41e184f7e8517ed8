use thiserror::Error;

use crate::report::AxiomReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("malformed scalar {literal:?}: {reason}")]
    Scalar { literal: String, reason: String },

    #[error("sort multiplicities must sum to 3, got {0}")]
    InvalidSortCounts(usize),

    #[error("no multiplication rule for {0}")]
    MissingRule(String),

    #[error("tensor is not associative at basis triple {witness:?}")]
    NotAssociative { witness: [usize; 3] },

    #[error("subspace is not an ideal")]
    NotIdeal(AxiomReport),

    #[error("action check failed with {} violation(s)", .0.violations.len())]
    ActionCheck(AxiomReport),

    #[error("crossed module check failed with {} violation(s)", .0.violations.len())]
    CrossedModuleCheck(AxiomReport),

    #[error("crossed module homomorphism check failed with {} violation(s)", .0.violations.len())]
    HomCheck(AxiomReport),

    #[error("action data check failed with {} violation(s)", .0.violations.len())]
    ActionDataCheck(AxiomReport),

    #[error("tetramultipliers from different contexts: {0}")]
    ContextMismatch(String),

    #[error("{0} is not a member of its space")]
    NotMember(String),

    #[error("closure failure: {what} (basis indices {witness:?}) left its space")]
    Closure { what: String, witness: Vec<usize> },

    #[error("{0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
