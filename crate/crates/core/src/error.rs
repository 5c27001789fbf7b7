use alloc::string::String;

/// Errors raised by the core operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid letter: factor {factor}, power {power}")]
    InvalidLetter { factor: u32, power: i32 },
    #[error("invalid group model: {0}")]
    InvalidModel(String),
    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded { what: &'static str, needed: u128, cap: u128 },
    #[error("operation requires a free-group model")]
    WrongModel,
    #[error("element is not loxodromic")]
    NotLoxodromic,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid probabilities: {0}")]
    InvalidProbabilities(String),
    #[error("oracle requires the uniform distribution on one-letter generators of a free group")]
    WrongDistribution,
    #[error("index out of range: {what} index {index}, only {len} available")]
    IndexOutOfRange { what: &'static str, index: usize, len: usize },
    #[error("epsilon ordering must satisfy 0 < epsilon' < epsilon < 1 (got epsilon = {epsilon}, epsilon' = {epsilon_prime})")]
    InvalidEpsilon { epsilon: String, epsilon_prime: String },
    #[error("subgroup generators are not a free basis (rank {rank} for {gens} generators)")]
    NotABasis { rank: usize, gens: usize },
    #[error("adjacent factors in a loxodromic product must differ (position {0})")]
    AdjacentIndex(usize),
    #[error("not a path: {0}")]
    NotAPath(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
