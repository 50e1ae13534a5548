use thiserror::Error;

use crate::graph::GraphClass;

/// What kind of class invariant a graph broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// An edge whose marks are not allowed for the declared class.
    MarkNotAllowed,
    DirectedCycle,
    /// `A <-> B` together with a directed path from one endpoint to the other.
    AlmostDirectedCycle,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate node name `{0}`")]
    DuplicateNode(String),
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error("more than one edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("{class:?} class violation ({kind:?}): {}", witness.join(", "))]
    ClassViolation {
        class: GraphClass,
        kind: ViolationKind,
        witness: Vec<String>,
    },
    #[error("operation `{op}` does not support {class:?} graphs")]
    ClassUnsupported { op: &'static str, class: GraphClass },
    #[error("graph is not a DAG")]
    NotADag,
    #[error("graph has {nodes} nodes, limit is {limit}")]
    GraphTooLarge { nodes: usize, limit: usize },
    #[error("more than {0} paths enumerated")]
    PathLimitExceeded(usize),
    #[error("path is not of definite status")]
    NotDefiniteStatus,
    #[error("edge `{0}` - `{1}` is not a directed edge")]
    NotDirectedEdge(String, String),
    #[error("circle component is not chordal: {}", .0.join(", "))]
    NonChordalCircleComponent(Vec<String>),
    #[error("more than {0} DAG extensions")]
    TooManyExtensions(usize),
    #[error("invalid arguments: {0}")]
    InvalidArguments(String),
    #[error("set I is not closed under possible descendants")]
    NotDescendral,
    #[error("set I does not contain the forbidden set")]
    NotSupersetOfForb,
    #[error("graph is not amenable: {0}")]
    NotAmenable(String),
    #[error("invalid constraints: {0}")]
    InvalidConstraints(String),
    #[error("line {line}, column {col}: expected {expected}")]
    Parse {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("SEM is not standardized")]
    NotStandardized,
    #[error("singular linear system")]
    SingularSystem,
    #[error("singular regression covariance")]
    SingularRegression,
    #[error("no witness found for a rejected set")]
    NoWitnessFound,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
