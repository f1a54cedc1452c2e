use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("generator counts differ: {0} vs {1}")]
    MismatchedGenerators(usize, usize),
    #[error("weight {weight} is not dominant: {detail}")]
    NotDominant { weight: String, detail: String },
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("not closed under the bracket: {0}")]
    NotClosed(String),
    #[error("incompatible algebra: {0}")]
    IncompatibleAlgebra(String),
    #[error("weights lie in different blocks: {0}")]
    DifferentBlocks(String),
    #[error("support spans several cosets of the root lattice: {0}")]
    MultipleCosets(String),
    #[error("invalid root: {0}")]
    InvalidRoot(String),
    #[error("{0}")]
    Invalid(String),
}
