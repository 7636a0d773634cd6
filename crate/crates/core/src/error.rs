use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("constant term is not the ring unit")]
    NonUnitConstant,

    #[error("leg counts differ: {left} vs {right}")]
    LegMismatch { left: usize, right: usize },

    #[error("operands belong to different algebras: gl({0}) vs gl({1})")]
    AlgebraMismatch(String, String),

    #[error("degree of the zero element is undefined")]
    ZeroElement,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("generator level {requested} exceeds the precomputed level {available}; rebuild with a higher order")]
    LevelExceeded { requested: usize, available: usize },

    #[error("leg {leg} out of range 1..={legs}")]
    LegOutOfRange { leg: usize, legs: usize },

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("evaluation at a pole: {0}")]
    Pole(String),

    #[error("entry ({row},{col}) is not parity-homogeneous")]
    Inhomogeneous { row: usize, col: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
