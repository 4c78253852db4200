use thiserror::Error;

/// Errors produced by field construction, geometry, constructions and verifiers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("{q} is not the size of a subfield of GF({p}^{m})")]
    NotASubfield { q: u64, p: u64, m: u32 },

    #[error("element does not lie in the subfield of size {q}")]
    NotInSubfield { q: u64 },

    #[error("{d} does not divide the multiplicative group order {order}")]
    NotADivisor { d: u64, order: u64 },

    #[error("points do not share one ambient space: {0}")]
    MixedAmbient(String),

    #[error("cross-ratio needs four pairwise distinct points")]
    DegenerateCrossRatio,

    #[error("work estimate {needed} exceeds the rank-evaluation budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("point set has no group generators attached")]
    MissingGenerators,

    #[error("point set does not span its ambient space (rank {rank}, need {need})")]
    NotSpanning { rank: usize, need: usize },

    #[error("code has dimension zero")]
    ZeroDimensionalCode,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
