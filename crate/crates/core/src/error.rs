use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation failed [{rule}]: {detail}")]
    Validation { rule: &'static str, detail: String },
    #[error("unknown builtin spec `{0}` (expected phi4_3, she_mult_1d or gkpz)")]
    UnknownSpec(String),
    #[error("search exceeded the node budget of {budget}; lower the cap or raise --node-budget")]
    CapTooLarge { budget: usize },
    #[error("precedence weights rejected: {0}")]
    Weight(String),
    #[error("pre-Lie product of two polynomial generators is not in the generator span")]
    UndefinedPreLie,
    #[error("basis label length {len} exceeds the truncation {max}")]
    TruncationExceeded { len: usize, max: usize },
    #[error("exponential series needs order {needed} but only {given} was allowed")]
    OrderTooSmall { needed: usize, given: usize },
    #[error("multi-index {0} is not in the populated class N")]
    NotInN(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Tree(String),
}

pub type Result<T> = std::result::Result<T, Error>;
