use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotBijection(String),

    #[error("entry {entry} out of range for degree {degree}")]
    OutOfRange { entry: usize, degree: usize },

    #[error("entry {0} repeated within one cycle")]
    RepeatedInCycle(usize),

    #[error("malformed cycle notation: {0}")]
    Parse(String),

    #[error("unknown generator family `{0}`")]
    UnknownFamily(String),

    #[error("family `{family}` needs n >= {min}, got {n}")]
    DegreeTooSmall { family: String, n: usize, min: usize },

    #[error("family `{0}`: definition pending")]
    DefinitionPending(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("rank {rank} out of range for capacity {capacity}")]
    RankOutOfRange { rank: u64, capacity: u64 },

    #[error("state space too large: {0}")]
    CapacityOverflow(String),

    #[error("memory budget of {budget} bytes exceeded at depth {depth}")]
    BudgetExceeded { budget: u64, depth: usize },

    #[error("no codec available for this state space")]
    NoCodec,

    #[error("target not reached within the explored region (depth {depth})")]
    Unreachable { depth: usize },

    #[error("state count {count} exceeds cap {cap}")]
    CapExceeded { count: u64, cap: u64 },

    #[error("unknown move label `{0}`")]
    UnknownLabel(String),

    #[error("degenerate distribution: {0}")]
    Degenerate(String),

    #[error("empty growth vector")]
    EmptyGrowth,

    #[error("search budget exhausted")]
    SearchBudget,
}

pub type Result<T> = std::result::Result<T, Error>;
