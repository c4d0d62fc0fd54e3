use thiserror::Error;

/// Errors produced by the census engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {op} of {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),

    #[error("index ({row}, {col}) out of range for a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("inconsistent block shapes: {0}")]
    BlockShape(String),

    #[error("dimension {dim} is not a power of {radix}")]
    NonPowerDimension { dim: usize, radix: u8 },

    #[error("label pattern has length {found}, expected {expected}")]
    PatternLength { expected: usize, found: usize },

    #[error("invalid label pattern {0:?}")]
    InvalidPattern(String),

    #[error("bar length {q} exceeds the configured limit {max} for radix {radix}")]
    SizeLimit { q: usize, max: usize, radix: u8 },

    #[error("board dimensions must be positive, got {0}x{1}")]
    InvalidSize(usize, usize),

    #[error("board parse error on line {line}: {message}")]
    BoardParse { line: usize, message: String },

    #[error("{0} requires a rectangular board")]
    RequiresRectangle(&'static str),

    #[error("board has {cells} playable cells, above the oracle cap of {cap}")]
    OracleCap { cells: usize, cap: usize },

    #[error("negative coefficient {coeff} on x^{a}*y^{b} in {context}")]
    NegativeCoefficient {
        context: &'static str,
        a: u32,
        b: u32,
        coeff: String,
    },

    #[error("polynomial parse error: {0}")]
    PolyParse(String),

    #[error("json: {0}")]
    Json(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
