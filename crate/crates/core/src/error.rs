use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("the given set is not a vertex cover")]
    NotVertexCover,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} is not a supported prime (primes up to 251)")]
    UnsupportedField(u32),

    #[error("operation requires a finite field")]
    InfiniteField,

    #[error("search cap exceeded: {0}")]
    CapExceeded(String),

    #[error("graph minus the modulator is not in family {0}")]
    FamilyMismatch(String),

    #[error("instance is a YES instance; no NO-certificate exists")]
    YesInstance,

    #[error("invalid orthogonal representation: {0}")]
    InvalidRepresentation(String),

    #[error("improper coloring: edge {{{0}, {1}}} is monochromatic")]
    ImproperColoring(usize, usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
