//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by constructors, operations and parsers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed magma spec `{0}`")]
    MagmaSpec(String),
    #[error("invalid operation table: {0}")]
    InvalidTable(String),
    #[error("operands belong to different magmas (`{0}` and `{1}`)")]
    MagmaMismatch(String, String),
    #[error("unknown element `{0}` in magma `{1}`")]
    UnknownElement(String, String),
    #[error("operation requires a finite magma, got `{0}`")]
    InfiniteMagma(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid clique: {0}")]
    InvalidClique(String),
    #[error("arity mismatch: {0} and {1}")]
    ArityMismatch(usize, usize),
    #[error("index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("invalid arc ({0}, {1}) for arity {2}")]
    InvalidArc(usize, usize, usize),
    #[error("diagonal ({0}, {1}) is crossed by a solid diagonal")]
    CrossedDiagonal(usize, usize),
    #[error("the unit clique is not accepted here")]
    UnitCliqueRejected,
    #[error("variant `{0}` is not applicable: {1}")]
    NotApplicable(String, String),
    #[error("malformed variant spec `{0}`")]
    VariantSpec(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration budget exceeded: {needed} cliques requested, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("closure violation: {0}")]
    ClosureViolation(String),
    #[error("invalid Dyck word: {0}")]
    InvalidDyckWord(String),
    #[error("excluded element: {0}")]
    Excluded(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal disagreement: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
