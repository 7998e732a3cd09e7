use thiserror::Error;

/// Structural problems with a graph description.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphErrorKind {
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}` `{1}`")]
    DuplicateEdge(String, String),
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: GraphErrorKind },
    #[error("invalid graph: {0}")]
    InvalidGraph(GraphErrorKind),
    #[error("vertex set belongs to a different graph")]
    ForeignSet,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("no edge between `{0}` and `{1}`")]
    MissingEdge(String, String),
    #[error("vertex sets are not disjoint")]
    NotDisjoint,
    #[error("budget exceeded: {what} needs {size}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("graph is not unicyclic")]
    NotUnicyclic,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
