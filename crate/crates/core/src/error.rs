use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("denominator prime {prime} is not allowed in {group}")]
    DisallowedPrime { prime: u64, group: String },

    #[error("{0} is not an element of the group")]
    NotInGroup(String),

    #[error("element {0} is outside the window")]
    OutsideWindow(String),

    #[error("window is not symmetric: {0} has no inverse in it")]
    NotSymmetric(String),

    #[error("cycle detected: {}", .0.join(" < "))]
    Cycle(Vec<String>),

    #[error("query outside the domain of a finite table: ({0}, {1})")]
    OutOfDomain(String, String),

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("search bound {bound} exceeded: {what}")]
    SearchBound { bound: u64, what: String },

    #[error("empty set")]
    EmptySet,

    #[error("{0} is not a member of the set")]
    NotMember(String),

    #[error("budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("window of {size} elements exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("torsion detected: {0} is its own inverse")]
    Torsion(String),

    #[error("no extreme point in [{}]", .0.join(", "))]
    NoExtremePoint(Vec<String>),

    #[error("invalid R set: {0}")]
    InvalidRSet(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent coset representatives: {0}")]
    RepresentativeInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
