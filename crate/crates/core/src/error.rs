use thiserror::Error;

use crate::program::RuleId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProgramError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: atom `{name}` uses the reserved prefix `__c`")]
    ReservedAtom {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("`{0}` is not a valid atom name")]
    InvalidAtom(String),
    #[error("rule {0} has a negative body; expected a basic program")]
    NotBasic(RuleId),
}

/// Precondition violations of the graph-level operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("coloring is not total")]
    NotTotal,
    #[error("rule {0} is already colored")]
    AlreadyColored(RuleId),
    #[error("rule {0} is not part of the graph")]
    UnknownRule(RuleId),
    #[error("vertex set is not closed under support; rule {0} cannot be derived inside it")]
    NotSupportClosed(RuleId),
    #[error("negative colors are not justified: rule {0} is neither unsupported nor blocked")]
    UnjustifiedMinus(RuleId),
    #[error("coloring covers {found} rules but the program has {expected}")]
    SizeMismatch { expected: usize, found: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("strategy {strategy} enumerates all total colorings and is limited to {limit} rules (program has {rules})")]
    TooLarge {
        strategy: String,
        limit: usize,
        rules: usize,
    },
    #[error("search invariant violated: {0}")]
    Invariant(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle limited to {limit} candidate atoms, program has {found}")]
    TooLarge { limit: usize, found: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BenchError {
    #[error("complete-graph Hamiltonian instances need at least 3 nodes, got {0}")]
    TooFewNodes(usize),
}
