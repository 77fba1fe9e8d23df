use std::fmt;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("pair ({a},{b}) must satisfy 1 <= a < b")]
    PairOrder { a: u32, b: u32 },

    #[error("pair ({a},{b}) exceeds the wire count l={ell}")]
    PairOutOfRange { a: u8, b: u8, ell: u8 },

    #[error("wire count {0} outside the supported range 1..=64")]
    WireCount(u32),

    #[error("lines {} and {} cross twice (again at point {point})", .lines.0, .lines.1)]
    CrossTwice { lines: (u8, u8), point: usize },

    #[error("lines {} and {} never cross", .lines.0, .lines.1)]
    NeverCross { lines: (u8, u8) },

    #[error("composed pair permutation is not the reversal J: {0}")]
    NotReversal(String),

    #[error("operation requires at least one intersection point")]
    EmptyDiagram,

    #[error("invalid signature: {0}")]
    Signature(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("stale move: {0}")]
    StaleMove(String),

    #[error("cache file: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn syntax(column: usize, message: impl fmt::Display) -> Self {
        Error::Syntax {
            column,
            message: message.to_string(),
        }
    }

    /// True for the two failures that stem from an invalid diagram rather
    /// than a malformed request.
    pub fn is_uip_violation(&self) -> bool {
        matches!(self, Error::CrossTwice { .. } | Error::NeverCross { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
