use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable-set mismatch: {0}")]
    VarMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("series constant term is not 1")]
    NonUnitConstant,
    #[error("degree precondition violated: {0}")]
    Degree(String),
    #[error("N = {n} exceeds the symbolic bound {bound}")]
    OverBound { n: usize, bound: usize },
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("element is not central")]
    NotCentral,
    #[error("not a Calogero-Moser point: rank([Z,L]+1) = {0}")]
    NotCmPoint(usize),
    #[error("parameters must be pairwise distinct: {0}")]
    Repeated(String),
    #[error("quasi-exponential family is linearly dependent")]
    Dependent,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("residual pole of order > 1 survived: {0}")]
    ResidualPole(String),
}

pub type Result<T> = std::result::Result<T, Error>;
