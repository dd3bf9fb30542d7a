use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge name `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` references undeclared vertex `{vertex}`")]
    DanglingEndpoint { edge: String, vertex: String },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("name `{0}` cannot be used as a letter (expected [A-Za-z_][A-Za-z0-9_']*, distinct from all other names)")]
    BadLetterName(String),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("special edge for `{vertex}`: {reason}")]
    BadSpecialChoice { vertex: String, reason: String },
    #[error("word does not compose as a path in the double graph: {0}")]
    NotAPath(String),
    #[error("`{0}` is not a basis path")]
    NotBasisPath(String),
    #[error("invalid closed path: {0}")]
    InvalidClosedPath(String),
    #[error("invalid infinite path: {0}")]
    InvalidInfinitePath(String),
    #[error("index {index} out of range for a path of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("operands live in different algebras")]
    AmbientMismatch,
    #[error("vector refers to a point outside the module carrier")]
    CarrierMismatch,
    #[error("invalid branching system: {0}")]
    InvalidBranchingSystem(String),
    #[error("invalid representation graph: {0}")]
    InvalidRepGraph(String),
    #[error("operation needs an exact representation graph, but the frontier is nonempty")]
    Truncated,
    #[error("representation graph is not connected")]
    Disconnected,
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot parse `{0}`")]
    Syntax(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
