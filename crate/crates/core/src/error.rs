use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("cone is not pointed: {0} lies in both the cone and its negation")]
    NotPointed(String),

    #[error("cone has no certified interior point; supply a strict witness")]
    NotSolid,

    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),

    #[error("points {0:?} and {1:?} share the coordinate {2}")]
    DuplicateCoordinate(String, String, String),

    #[error("unknown point label {0:?}")]
    UnknownPoint(String),

    #[error("distance table has no entry for ({0:?}, {1:?})")]
    MissingEntry(String, String),

    #[error("distance table has two entries for ({0:?}, {1:?})")]
    DuplicateEntry(String, String),

    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(String),

    #[error("candidate set is empty")]
    EmptyCandidates,

    #[error("query family has no query points")]
    EmptyQueries,

    #[error("{0:?} is not a member of the candidate set")]
    NotACandidate(String),

    #[error("witness is undefined at point {0:?}")]
    IncompleteWitness(String),

    #[error("pseudo-Chebyshev check requested without an embedding")]
    MissingEmbedding,

    #[error("embedding has no vector for point {0:?}")]
    EmbeddingMissingPoint(String),

    #[error("counterexample does not re-verify: {0}")]
    StaleCounterexample(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
