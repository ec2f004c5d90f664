use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is disconnected: vertices {a} and {b} lie in different components")]
    Disconnected { a: usize, b: usize },

    #[error("{what}: size {got} exceeds limit {limit}")]
    CapExceeded {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("edge {{{0}, {1}}} is not in the graph")]
    MissingEdge(usize, usize),

    #[error("vertex subset is empty")]
    EmptySubset,

    #[error("vector is zero")]
    ZeroVector,

    #[error("rank {k} out of range 1..={len}")]
    RankOutOfRange { k: usize, len: usize },

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("numerical check failed: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
