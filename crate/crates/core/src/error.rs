//! Error type shared by all modules.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unrecognized type label `{0}` (expected A<r> with r >= 1, D<r> with r >= 4, or E6/E7/E8)")]
    InvalidLabel(String),

    #[error("coordinate vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("node {node} is out of range for {label} (valid: 1..={rank})")]
    InvalidNode { label: String, node: usize, rank: usize },

    #[error("cyclotomic field mismatch: conductor {left} vs {right}")]
    FieldMismatch { left: u64, right: u64 },

    #[error("division by zero in cyclotomic field")]
    DivisionByZero,

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("{what} ({needed}) exceeds the resource guard ({guard})")]
    ResourceGuard {
        what: &'static str,
        needed: u128,
        guard: u128,
    },

    #[error("weight system is not a character: negative residual multiplicity at {0:?}")]
    NotACharacter(Vec<i64>),

    #[error("the E8 branching rows omit negligible constituents; quantum-dimension totals are available but full characters are not")]
    IncompleteTable,

    #[error("series coefficient at order {order} is not a rational integer")]
    NonIntegralCoefficient { order: usize },

    #[error("invalid dimension vector: {0}")]
    InvalidDimensionVector(String),
}

pub type Result<T> = std::result::Result<T, Error>;
