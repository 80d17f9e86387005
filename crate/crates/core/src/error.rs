use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree {degree} exceeds the table bound {bound}")]
    DegreeOverflow { degree: usize, bound: usize },

    #[error("invalid Steenrod word {0:?}: exponents must be positive")]
    InvalidWord(Vec<u32>),

    #[error("decomposability is only defined in positive degree")]
    ZeroDegree,

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("resolution is not minimal at (s, t) = ({s}, {t})")]
    NotMinimal { s: usize, t: usize },

    #[error("bounds too small: {0}")]
    Bounds(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
