use thiserror::Error;

use crate::tree::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word set is not prefix-closed: parent of {0} is missing")]
    NotPrefixClosed(Word),
    #[error("node {0} has a right child (or is not in the tree)")]
    NotRightChildless(Word),
    #[error("removal chain has {available} nodes, {needed} requested")]
    ChainTooShort { needed: usize, available: usize },
    #[error("word {0} is not a node of the detached tree")]
    NotInDetachedTree(Word),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid labelling: {0}")]
    InvalidLabelling(String),
    #[error("malformed path at step {0}")]
    MalformedPath(usize),
    #[error("not a valid {0}")]
    InvalidPathPair(String),
    #[error("no preimage: {0}")]
    NoPreimage(String),
    #[error("ambiguous preimage: {0}")]
    AmbiguousPreimage(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("matrix entry {value} at column {col}, row {row} is not 0 or 1")]
    BinaryViolation { col: usize, row: usize, value: u32 },
    #[error("paths end at different trees: {0} vs {1}")]
    ShapeMismatch(String, String),
    #[error("growth diagram cell ({col}, {row}) has no valid preimage")]
    CellFailure { col: usize, row: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
