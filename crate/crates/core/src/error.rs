//! Error types shared across the crate.

use num_bigint::BigUint;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: vector has {got} entries, expected {expected}")]
    Dimension { expected: usize, got: usize },

    #[error("zero pivot projection: the run should already have terminated")]
    ZeroPivot,

    #[error("target index {target} has fewer than {needed} predecessors")]
    Arity { target: usize, needed: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("harvest sub-run for q = {q} did not find a lattice vector")]
    Harvest { q: BigUint },

    #[error("format error: {0}")]
    Format(String),

    #[error("singular basis (determinant 0)")]
    Singular,

    #[error("dual lattice does not reduce to a single codeword mod P (rank {rank})")]
    NotCodimensionOne { rank: usize },

    #[error("not a basis: {0}")]
    Basis(String),

    #[error("parameters outside the model's regime: {0}")]
    Regime(String),

    #[error("iteration recursion failed to contract after {cap} steps")]
    Divergence { cap: u64 },
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
