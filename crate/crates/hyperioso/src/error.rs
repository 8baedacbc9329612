//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its documented range (dimension cap, moment
    /// exponent, noise rate, family invariants, ...).
    #[error("config error: {0}")]
    Config(String),

    /// Two objects that must live on the same hypercube do not.
    #[error("dimension mismatch: expected n = {expected}, got n = {actual}")]
    Dimension { expected: u32, actual: u32 },

    /// A restriction's assignment does not match its fixed coordinate set.
    #[error("restriction error: {0}")]
    Restriction(String),

    /// A combinatorial guard was exceeded (exhaustive search too large).
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Every function in a corpus was degenerate for the requested check.
    #[error("degenerate corpus: {0}")]
    DegenerateCorpus(String),

    /// A function spec, corpus spec, or serialized object failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A check id that is not in the registry.
    #[error("unknown check id: {0}")]
    UnknownCheck(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
