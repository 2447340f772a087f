use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    #[error("parts sum to {actual}, expected {expected}")]
    PartsMismatch { expected: usize, actual: usize },
    #[error("index {requested} exceeds table bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("shift {shift} exceeds truncation order {order}")]
    ShiftBeyondOrder { shift: usize, order: usize },
    #[error("index {index} exceeds truncation order {order}")]
    OrderExceeded { index: usize, order: usize },
    #[error("sequence is not in the convolution group: leading term is zero")]
    NotInGroup,
    #[error("point {point} lies outside the support [0, {m}]")]
    OutsideSupport { point: String, m: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cell (m={m}, mu={mu}, n={n}): {source}")]
    Cell {
        m: usize,
        mu: usize,
        n: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
