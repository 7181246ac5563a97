use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("ground set size {size} out of range (2..={cap})")]
    GroundSize { size: usize, cap: usize },
    #[error("{what} requires ground size at most {cap}, got {size}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("search budget exhausted in {what} (cap {cap})")]
    BudgetExhausted { what: &'static str, cap: usize },
    #[error("element {index} out of range for ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("empty block not allowed here")]
    EmptyBlock,
    #[error("blocks are not pairwise disjoint")]
    NotDisjoint,
    #[error("blocks do not cover the ground set")]
    NotCovering,
    #[error("pointed blocks are not complementary")]
    NotComplementary,
    #[error("pointed blocks are not disjoint")]
    NotDisjointPointed,
    #[error("tree has no internal node")]
    NoInternalNode,
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("partition is not a member of the closure table")]
    UnknownMember,
    #[error("invalid ground set labels: {0}")]
    Labels(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    Graph(String),
    #[error("invalid function table: {0}")]
    Table(String),
    #[error("not a connectivity function: {0}")]
    Connectivity(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("invalid certificate: {0}")]
    Certificate(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
