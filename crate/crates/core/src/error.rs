use thiserror::Error;

use crate::structures::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input at line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid weight function: {0}")]
    Weight(String),
    #[error("graph contains a diamond")]
    DiamondPresent(Box<Witness>),
    #[error("graph contains a C4")]
    NotC4Free(Box<Witness>),
    #[error("graph is outside the required class: {}", .0.kind)]
    NotInClass(Box<Witness>),
    #[error("vertex set is not a clique")]
    NotAClique,
    #[error("clique has two distinct maximal extensions")]
    AmbiguousExtension,
    #[error("vertex {0} is balanced")]
    VertexBalanced(usize),
    #[error("{what}: {size} exceeds guard {guard}")]
    TooLarge {
        what: &'static str,
        size: usize,
        guard: usize,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("property violated: {0}")]
    PropertyViolation(String),
    #[error("collection is not smooth: {0}")]
    NotSmooth(String),
    #[error("assertion {claim} failed: {witness}")]
    AssertionFailed { claim: String, witness: String },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("separator oracle failed: {0}")]
    OracleFailure(String),
    #[error("clique cover {found} of the carried set exceeds budget {budget}")]
    CoverBudgetExceeded { found: usize, budget: usize },
    #[error("bag independence {alpha} exceeds state guard {guard}")]
    StateBlowup { alpha: usize, guard: usize },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("no connected subgraph meets all three neighborhoods")]
    NoConnector,
    #[error("no bag of atom {0} contains its cut clique")]
    MissingCutCliqueBag(usize),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("no balanced separator found: {0}")]
    Unsolvable(String),
    #[error("search budget exhausted")]
    BudgetExhausted,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
