//! Error types shared by the library and the CLI.

use std::time::{Duration, Instant};

/// Malformed instance or decomposition text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    /// 1-based line number, 0 when the error concerns the whole input.
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, msg: impl Into<String>) -> Self {
        ParseError { line, msg: msg.into() }
    }
}

/// Errors raised by solvers and the surrounding pipeline.
#[derive(Debug, thiserror::Error)]
pub enum BwError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("invalid hypergraph: {0}")]
    InvalidInput(String),
    #[error("{what}: size {size} exceeds the limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("algorithm `{alg}` requires a graph; component has an edge of size {size}")]
    NotAGraph { alg: &'static str, size: usize },
    #[error("time limit exceeded")]
    Timeout,
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Shorthand result type.
pub type Result<T, E = BwError> = std::result::Result<T, E>;

/// Cooperative wall-clock limit polled by the solvers.
#[derive(Debug, Clone, Copy, Default)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    /// No limit.
    pub const NONE: Deadline = Deadline(None);

    /// Limit `d` from now.
    pub fn after(d: Duration) -> Self {
        Deadline(Instant::now().checked_add(d))
    }

    /// Optional limit in seconds.
    pub fn from_secs(secs: Option<f64>) -> Self {
        match secs {
            Some(s) if s.is_finite() && s >= 0.0 => Self::after(Duration::from_secs_f64(s)),
            _ => Self::NONE,
        }
    }

    /// `Err(Timeout)` once the limit has passed.
    #[inline]
    pub fn check(&self) -> Result<()> {
        match self.0 {
            Some(t) if Instant::now() >= t => Err(BwError::Timeout),
            _ => Ok(()),
        }
    }
}
