use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Variants fall into two classes. Input errors describe something wrong with
/// the data handed in. Theorem violations (see [`Error::is_theorem_violation`])
/// mean a proven identity failed to hold on computed values, which can only be
/// caused by a bug in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {index} is not a point of the lattice")]
    NonLatticeVertex { index: usize },

    #[error("lattice generators span rank {rank}, expected {expected}")]
    RankDeficientLattice { rank: usize, expected: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("polytope of dimension {dim} has no facets")]
    DegeneratePolytope { dim: isize },

    #[error("the face is empty")]
    EmptyFace,

    #[error("vertex set {0:?} is not a face")]
    UnknownFace(Vec<usize>),

    #[error("faces are not comparable")]
    NotComparable,

    #[error("poset is not Eulerian: {0}")]
    NotEulerian(String),

    #[error("polytope is not Gorenstein")]
    NotGorenstein,

    #[error("facet normal {facet} pairs to {value} with the interior point, expected 1")]
    GorensteinHeightViolation { facet: usize, value: i64 },

    #[error("faces do not form a valid pair: {0}")]
    FacePairInvalid(String),

    #[error("polytope is not a Cayley join of the given faces")]
    NotCayleyJoin,

    #[error("parts live in lattices of different rank")]
    MixedLattices,

    #[error("polytope does not carry a Cayley structure of length {0}")]
    NotCayleyPolytope(usize),

    #[error("special simplex is not aligned with the Cayley levels")]
    SimplexNotCayleyAligned,

    #[error("too many parts: {got} exceeds the limit {limit}")]
    TooManyParts { got: usize, limit: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("[{module}] internal inconsistency: {detail}")]
    InternalInconsistency {
        module: &'static str,
        detail: String,
    },

    #[error("[{module}] negative coefficient in {what}")]
    NegativeCoefficient { module: &'static str, what: String },

    #[error("[stringy] stringy E-function is not a polynomial; offending faces {faces:?}")]
    NonPolynomialResult { faces: Vec<usize> },

    #[error("[{module}] theorem violation: {detail}")]
    TheoremViolation {
        module: &'static str,
        detail: String,
    },
}

impl Error {
    /// True for errors that can only come from a bug (a proven statement failed).
    pub fn is_theorem_violation(&self) -> bool {
        matches!(
            self,
            Error::InternalInconsistency { .. }
                | Error::NegativeCoefficient { .. }
                | Error::NonPolynomialResult { .. }
                | Error::TheoremViolation { .. }
                | Error::GorensteinHeightViolation { .. }
        )
    }

    pub(crate) fn inconsistency(module: &'static str, detail: impl Into<String>) -> Self {
        Error::InternalInconsistency {
            module,
            detail: detail.into(),
        }
    }

    pub(crate) fn violation(module: &'static str, detail: impl Into<String>) -> Self {
        Error::TheoremViolation {
            module,
            detail: detail.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
