use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("zero is not an edge label (line {line}, column {column})")]
    ZeroLiteral { line: usize, column: usize },
    #[error("empty face list")]
    EmptyFaceList,
    #[error("face {0} has an empty word")]
    EmptyFace(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("unknown face {0}")]
    UnknownFace(usize),
    #[error("unknown edge {0}")]
    UnknownEdge(u32),
    #[error("face {face} has length {len}; only triangles are supported here")]
    NonTriangular { face: usize, len: usize },
    #[error("vertices {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("collar does not separate the complex: {0}")]
    NotSeparating(String),
    #[error("no isomorphism between the collar closures")]
    NoMatching,
    #[error("collar matching is not unique ({0} candidates)")]
    AmbiguousMatching(usize),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("invalid cobordism: {0}")]
    InvalidCobordism(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("graph has {0} vertices; the automorphism search is bounded at {1}")]
    SizeBound(usize, usize),
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("edge map is not total: edge {0} has no image")]
    NonTotalMap(u32),
    #[error("composite changes the link type at vertex {0}")]
    TypeNotPreserved(usize),
    #[error("malformed cobordism file: {0}")]
    CobordismFile(String),
    #[error("search produced an invalid cobordism: {0}")]
    SearchBug(String),
}
