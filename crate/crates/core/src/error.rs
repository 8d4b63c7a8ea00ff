use thiserror::Error;

use crate::fano::Point;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FanoError {
    #[error("point label {0} is outside 1..=7")]
    BadPoint(u8),
    #[error("image table {0:?} is not a bijection")]
    NotBijective(Vec<u8>),
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("no element fixes {fix} and moves {moved}")]
    NoFixMove { fix: Point, moved: Point },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("state closure of {word} exceeded the budget of {budget} states")]
    BudgetExceeded { budget: usize, word: String },
    #[error("atom {0} is declared but has no definition")]
    Undefined(String),
    #[error("element {0} is not an involution")]
    NotInvolution(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundError {
    #[error("eta = {0} is outside the open interval (0, 1)")]
    EtaOutOfRange(f64),
    #[error("lambda = {lambda} must exceed 1 + {tol}")]
    LambdaTooSmall { lambda: f64, tol: f64 },
    #[error("lambda = {0} exceeds 31, where the crossing is no longer unique")]
    LambdaTooLarge(f64),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Fano(#[from] FanoError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("radius mismatch: {0} vs {1}")]
    RadiusMismatch(usize, usize),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
