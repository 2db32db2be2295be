use thiserror::Error;

/// Errors shared across the crate.
///
/// Internal invariant violations (a solver output failing its substitution check, say)
/// panic instead: a wrong certificate must never be returned quietly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("negative b entry at vertex `{0}`")]
    NegativeB(String),
    #[error("edge set must be nonempty for this operation")]
    EmptyEdgeSet,
    #[error("b must be nonzero for this operation")]
    ZeroB,
    #[error("vertex cap exceeded: graph has {actual} vertices but max-vertices is {limit}")]
    VertexCapExceeded { actual: usize, limit: usize },
    #[error("edge cap exceeded: graph has {actual} edges but max-edges is {limit}")]
    EdgeCapExceeded { actual: usize, limit: usize },
    #[error("({0}) is not a bipartition: {1}")]
    NotBipartition(String, String),
    #[error("index mismatch: {0}")]
    IndexMismatch(String),
    #[error("not a face graph of P(G,b)")]
    NotAFaceGraph,
    #[error("point is not in P(G,b): {0}")]
    NotInPolytope(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("malformed document: {0}")]
    Format(String),
}
