use thiserror::Error;

/// Errors raised by the library. Input validation failures and violated
/// preconditions both land here; "no" answers (a failing edge, an obstructed
/// congruence system) are ordinary return values, never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),

    #[error("more than one edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),

    #[error("label of edge `{src}`-`{dst}` is not parallel to the coordinate difference")]
    NotCollinear { src: String, dst: String },

    #[error("class has no value at vertex `{0}`")]
    MissingValue(String),

    #[error("not an induced subgraph: {0}")]
    NotInduced(String),

    #[error("moduli are linearly dependent; use the degree-bounded solver")]
    DependentModuli,

    #[error("linear functional is not generic: {0}")]
    NonGeneric(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid polytope: {0}")]
    InvalidPolytope(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
