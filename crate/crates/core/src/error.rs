use thiserror::Error;

use crate::groebner::GbStats;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring context mismatch: {0}")]
    Context(String),

    #[error("exponent overflow: {0}")]
    ExponentOverflow(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid input: {0}")]
    Input(String),

    /// A configured resource cap was hit before the computation finished.
    /// The partial statistics describe how far it got.
    #[error("computation capped ({reason}) after {} S-pairs, max degree {}", stats.spairs, stats.max_degree)]
    Capped { reason: String, stats: GbStats },

    /// Refused up front because the work required exceeds the given budget.
    #[error("refused: {what} requires {required}, budget is {budget}")]
    Refused {
        what: String,
        required: String,
        budget: String,
    },
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::Capped { .. } | Error::Refused { .. })
    }
}
