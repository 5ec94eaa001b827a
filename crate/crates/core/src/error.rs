use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed textual input (permutation, cycle structure, square, assignment).
    #[error("parse error: {0}")]
    Parse(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The cycle structure admits no partial Latin square.
    #[error("{0} is not the cycle structure of an autotopism of a partial Latin square")]
    NotAutotopismStructure(String),

    #[error("the partial Latin square is not invariant under the given isotopism")]
    NotInvariant,

    /// The square is empty where a non-empty one is required.
    #[error("empty partial Latin square")]
    EmptySquare,

    /// A cell pair repeats inside an array that should be Latin.
    #[error("Latin condition violated: {0}")]
    LatinViolation(String),

    /// Brute-force group search refused because the order is above the cap.
    #[error("order {order} exceeds the brute-force limit {limit}")]
    OrderLimit { order: usize, limit: usize },

    #[error("search has {orbits} orbits, above the supported maximum {max}")]
    TooManyOrbits { orbits: usize, max: usize },

    /// Node or time budget exhausted before the search finished.
    #[error("budget exceeded after {nodes} nodes ({reason})")]
    BudgetExceeded { nodes: u64, reason: String },

    /// No Latin square admits the isotopism as an autotopism.
    #[error("the isotopism is not an autotopism of any Latin square")]
    NotLatinAutotopism,

    #[error("shape is not invariant under the isotopism")]
    ShapeNotInvariant,

    #[error("no Θ-completable partial Latin square has the requested shape")]
    EmptyBasis,

    #[error("basis is not homogeneous")]
    NotHomogeneous,

    #[error("the structure set is not closed under parastrophy")]
    NotParastrophicallyClosed,
}

pub type Result<T> = std::result::Result<T, Error>;
