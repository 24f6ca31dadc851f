use thiserror::Error;

/// Errors raised while building or reading graphs and partitions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: u64, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(u32, u32),
    #[error("hyperedge {index} has {found} distinct vertices, expected {expected}")]
    BadHyperedge { index: usize, found: usize, expected: usize },
    #[error("duplicate hyperedge {0:?}")]
    DuplicateHyperedge(Vec<u32>),
    #[error("uniformity must be at least 2, got {0}")]
    BadUniformity(usize),
    #[error("graph needs at least two vertices, got {0}")]
    Degenerate(usize),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has no edges")]
    NoEdges,
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("edge count mismatch: header says {expected}, found {found}")]
    CountMismatch { expected: u64, found: u64 },
}

/// Errors from the binary biclique formats and the compact representation.
#[derive(Debug, Error)]
pub enum ReprError {
    #[error("bad magic {0:?}")]
    BadMagic([u8; 4]),
    #[error("truncated input")]
    Truncated,
    #[error("trailing bytes after payload")]
    Trailing,
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("vertex {0} already removed")]
    AlreadyRemoved(u32),
    #[error("query sets overlap at vertex {0}")]
    Overlap(u32),
    #[error("malformed biclique {0}: sides must be nonempty, sorted and disjoint")]
    Malformed(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = GraphError> = std::result::Result<T, E>;
