use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("coordinate {0} outside the supported range of +/-2^61")]
    CoordinateRange(i128),

    #[error("clique-grid representation requires uniform radii (found {first} and {other})")]
    NonUniformRadii { first: i128, other: i128 },

    #[error("invalid clique-grid representation: {0}")]
    InvalidRepresentation(String),

    #[error("strip spans {columns} columns, more than the allowed {limit}")]
    StripTooWide { columns: u32, limit: u32 },

    #[error("malformed path decomposition: {0}")]
    MalformedDecomposition(String),

    #[error("search space too large: {needed} subsets exceed the budget of {budget}")]
    TooLarge { needed: u128, budget: u128 },

    #[error("{0} terminals is beyond the Dreyfus-Wagner table limit of {1}")]
    TooManyTerminals(usize, usize),

    #[error("embedding: {0}")]
    Embedding(String),

    #[error("path for edge {edge} has length {length}; need an even length of at least 8")]
    PathParity { edge: usize, length: i128 },

    #[error("gadget certificate failed: {0}")]
    Certificate(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
