use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: wrong table dimensions, out-of-range entries, bad documents.
    #[error("format error: {0}")]
    Format(String),
    /// The set `{y : x*y <= z}` (or `{y : y*x <= z}`) has no maximum.
    #[error("product is not residuated: no maximum for the {division} residual at ({x}, {z})")]
    NotResiduated {
        division: &'static str,
        x: usize,
        z: usize,
    },
    #[error("unsupported symbol: {0}")]
    UnsupportedSymbol(String),
    #[error("not a congruence: {0}")]
    NotCongruence(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A search exhausted its node budget before reaching a verdict.
    #[error("search budget exhausted after {nodes} nodes")]
    Budget { nodes: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
