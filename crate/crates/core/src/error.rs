use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generators have mismatched degrees ({0} vs {1})")]
    DegreeMismatch(usize, usize),
    #[error("group too large: more than {bound} elements")]
    TooLarge { bound: usize },
    #[error("element is not in the group")]
    NotInGroup,
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    /// A computed object failed one of its internal consistency checks.
    #[error("corrupt result: {0}")]
    Corruption(String),
    /// A block-theoretic statement that must hold failed on actual data.
    #[error("theory violation: {0}")]
    TheoryViolation(String),
    #[error("groupspec parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
