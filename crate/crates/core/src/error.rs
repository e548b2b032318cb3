use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("normal vector {0:?} is not primitive")]
    NonPrimitiveNormal(Vec<i64>),
    #[error("hyperplane has a zero normal vector")]
    ZeroNormal,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("hyperplane {0} is not in the arrangement")]
    HyperplaneNotInArrangement(String),
    #[error("flat is not an intersection of hyperplanes of the arrangement")]
    FlatNotInPoset,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("arrangement is not central")]
    NotCentral,
    #[error("second arrangement is not a subarrangement of the first")]
    NotSubarrangement,
    #[error("expected rank {expected}, found rank {found}")]
    WrongRank { expected: usize, found: usize },
    #[error("multiarrangement has essential rank {0} > 2")]
    RankTooHigh(usize),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("vertex {0} is not a coking")]
    NotCoking(usize),
    #[error("vertex {0} is not a king")]
    NotKing(usize),
    #[error("weight of vertex {0} is not an integer interval")]
    NonIntervalWeight(usize),
    #[error("enumeration too large: l = {0} exceeds 5")]
    TooLarge(usize),
    #[error("weight tuple is not centered and nonnegative")]
    WrongTupleClass,
    #[error("point budget exceeded: q^l = {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("{0} distinct normal directions exceed the subset enumeration cap of 24")]
    TooManyHyperplanes(usize),
    #[error("quasi-polynomial verification failed at q = {q}")]
    VerificationFailed { q: u64 },
    #[error("polynomial variable sets differ")]
    VariableMismatch,
    #[error("linear form has no coefficient equal to +1 or -1")]
    NoUnitCoefficient,
    #[error("derivations {0:?} are not logarithmic")]
    NotMembers(Vec<usize>),
    #[error("integer overflow in exact kernel")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;
