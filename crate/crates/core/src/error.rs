use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Edge, vertex and path arguments are rendered with their display names so
/// that messages can be shown to a user verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed skeleton: {0}")]
    Malformed(String),
    #[error("missing square for composable pair ({0},{1})")]
    MissingSquare(String, String),
    #[error("duplicate square for pair ({0},{1})")]
    DuplicateSquare(String, String),
    #[error("square relation is not a bijection: pair ({0},{1}) is hit {2} times")]
    NonBijectiveSquares(String, String, usize),
    #[error("cube condition fails on triple ({0},{1},{2}): {3} vs {4}")]
    CubeConditionFailure(String, String, String, String, String),

    #[error("paths {0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("degree {0} out of range for path of degree {1}")]
    DegreeOutOfRange(String, String),
    #[error("range mismatch between {0} and {1}")]
    RangeMismatch(String, String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("invalid color {0}")]
    InvalidColor(usize),

    #[error("set {0} is not contained in the slice of degree {1}")]
    NotInSlice(String, String),
    #[error("set is not contained in the ambient set {0}")]
    NotContained(String),
    #[error("path {0} has degree smaller than {1}")]
    DegreeTooSmall(String, String),
    #[error("slice mismatch: {0} vs {1}")]
    SliceMismatch(String, String),
    #[error("degree order violated: {0} is not below {1}")]
    DegreeOrder(String, String),

    #[error("set {{{1}}} is not exhaustive at {0}: witness {2}")]
    NotExhaustive(String, String, String),
    #[error("regular weights need a regular graph")]
    RegularityRequired,

    #[error("prefix degree {0} does not dominate {1}")]
    InsufficientDegree(String, String),
    #[error("graph has a source at vertex {0}; prefix semantics unavailable")]
    SourcePresent(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
