use thiserror::Error;

/// Errors produced by the library. Every variant carries the offending value
/// so that callers (and the CLI) can report it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("{n} vertices requested; at most {max} are supported")]
    TooManyVertices { n: usize, max: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge {{{0},{1}}} is not present")]
    MissingEdge(usize, usize),
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("graph is not regular")]
    NotRegular,
    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),
    #[error("malformed graph6 input {token:?}: {reason}")]
    Graph6 { token: String, reason: String },
    #[error("invalid group specification {0:?}")]
    InvalidGroup(String),
    #[error("invalid connection set: {0}")]
    InvalidConnectionSet(String),
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("invalid (l,t) parameters: l={l}, t={t}")]
    InvalidLtSpec { l: usize, t: usize },
    #[error("{what} = {value} exceeds the supported bound {max}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        max: usize,
    },
    #[error("matrix of size {rows}x{cols} exceeds the supported size {max_rows}x{max_cols}")]
    MatrixTooLarge {
        rows: usize,
        cols: usize,
        max_rows: usize,
        max_cols: usize,
    },
    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),
    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    WrongDegree {
        vertex: usize,
        degree: usize,
        expected: usize,
    },
    #[error("edges {{{},{}}} and {{{},{}}} share an endpoint", .0.0, .0.1, .1.0, .1.1)]
    AdjacentEdges((usize, usize), (usize, usize)),
    #[error("edges {{{},{}}} and {{{},{}}} do not lie on a common face", .0.0, .0.1, .1.0, .1.1)]
    NotCofacial((usize, usize), (usize, usize)),
    #[error("subdividing {{{},{}}} and {{{},{}}} on this face would break bipartiteness", .0.0, .0.1, .1.0, .1.1)]
    ParityMismatch((usize, usize), (usize, usize)),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("invalid vertex count {0}: must be even and within the supported range")]
    InvalidVertexCount(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
