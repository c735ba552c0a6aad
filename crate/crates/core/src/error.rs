use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {vertex} has degree {degree}, above the bound {bound}")]
    DegreeBound { vertex: usize, degree: usize, bound: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("ball distributions have different radii ({0} and {1})")]
    RadiusMismatch(usize, usize),
    #[error("rooted graph is not a path")]
    NotAPath,
    #[error("edge {0}-{1} is not in the graph")]
    EdgeNotInGraph(usize, usize),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("measure is not sustained by the graph")]
    NotSustained,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
