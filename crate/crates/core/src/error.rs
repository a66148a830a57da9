use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("vector is not primitive (gcd of entries is {0})")]
    NotPrimitive(String),
    #[error("invalid polytope: {0}")]
    Validation(String),
    #[error("origin is not an interior point of the polytope")]
    OriginNotInterior,
    #[error("polytope is not simplicial: {0}")]
    NonSimplicial(String),
    #[error("polytope is not a simplex: {0} vertices in dimension {1}")]
    NotSimplex(usize, usize),
    #[error("weight system {0} is not reduced")]
    NotReduced(String),
    #[error("weight system {0} is not reflexive")]
    NotReflexive(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("value out of range: {0}")]
    Range(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for errors that signal a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
