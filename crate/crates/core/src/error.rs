use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight has {got} coordinates, expected {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("invalid diagram rank {0}")]
    InvalidRank(usize),

    #[error("node index {node} out of range 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("integer overflow in weight arithmetic")]
    Overflow,

    #[error("weight is not dominant at node {0}")]
    NotDominant(usize),

    #[error("label is not Levi-dominant: uncrossed node {0} carries a negative coefficient")]
    NotLeviDominant(usize),

    #[error("malformed segmentation: {0}")]
    MalformedSegmentation(String),

    #[error("crossed nodes of the target are not a subset of the source's")]
    NotNested,

    #[error("bundles live on different spaces: {0} and {1}")]
    SpaceMismatch(String, String),

    #[error("character peeling failed at weight {0}; input is not a Levi character")]
    PeelingFailure(String),

    #[error("exterior degree {p} out of range 0..={max}")]
    DegreeOutOfRange { p: usize, max: usize },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("spectral sequence does not collapse: cell ({p},{q}) is nonempty")]
    NotCollapsed { p: usize, q: usize },

    #[error("invalid document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
