//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("vectors must have dimension >= 1")]
    EmptyVector,

    #[error("dimension {0} exceeds the supported cap {1}")]
    DimensionCap(usize, usize),

    #[error("cannot parse scalar from {0:?}")]
    ScalarParse(String),

    #[error("{0} must be positive")]
    NotPositive(&'static str),

    #[error("p must exceed 1, got {0}")]
    InvalidExponent(f64),

    #[error("margin must be 0 in exact arithmetic (got {0})")]
    ExactMargin(f64),

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("point {index} coincides with the witness")]
    PointAtWitness { index: usize },

    #[error("polytope vertex set is not closed under negation (vertex {0})")]
    AsymmetricPolytope(usize),

    #[error("polytope is not full-dimensional (vertex rank {rank} < dimension {dim})")]
    DegeneratePolytope { rank: usize, dim: usize },

    #[error("polytope facet enumeration too large: {subsets} vertex subsets (cap {cap})")]
    PolytopeTooLarge { subsets: u128, cap: u128 },

    #[error("measure has no atoms")]
    EmptyMeasure,

    #[error("atoms {0} and {1} coincide")]
    DuplicateAtom(usize, usize),

    #[error("ball of radius {radius} at atom {index} has measure zero")]
    EmptyBall { index: usize, radius: f64 },

    #[error("support function has {got} values for {atoms} atoms")]
    FunctionLength { got: usize, atoms: usize },

    #[error("measure has {got} weights for {atoms} atoms")]
    WeightLength { got: usize, atoms: usize },

    #[error("level threshold alpha must be positive")]
    InvalidAlpha,

    #[error("empty radius list")]
    NoRadii,

    #[error("greedy cover requires 0 < s < r (got s = {s}, r = {r})")]
    CoverRadii { s: f64, r: f64 },

    #[error("point {0:?} is not an atom of the measure")]
    NotAnAtom(String),

    #[error("family is empty where at least one ball is required")]
    EmptyFamily,

    #[error("family radii are not all equal")]
    MixedRadii,

    #[error("family is not valid: {0}")]
    InvalidFamily(String),

    #[error("candidate set of {0} points exceeds the exact-search cap {1}; use the heuristic search or raise the cap")]
    CandidateCap(usize, usize),

    #[error("candidate set is empty")]
    EmptyCandidates,

    #[error("family has {got} balls but {needed} are required")]
    FamilyTooSmall { got: usize, needed: usize },

    #[error("p has denominator {0}, too large for exact flooring (limit 10^6); pass a simpler rational")]
    ExponentDenominator(String),

    #[error("weights must all be positive (weight {0})")]
    NonpositiveWeight(usize),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv parse error at line {line}: {reason}")]
    Csv { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
