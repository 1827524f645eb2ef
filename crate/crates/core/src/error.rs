use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An enumeration or search would exceed its configured budget.
    #[error("{what}: needs {needed}, budget is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("result would have about {digits} decimal digits, cap is {cap}")]
    DigitCap { digits: u64, cap: u64 },

    #[error("level {level}: no sample reached the required density after {attempts} attempts (best x = {best_x}, required x >= {required_x})")]
    RetriesExhausted {
        level: usize,
        attempts: u64,
        best_x: usize,
        required_x: String,
        seed: u64,
    },

    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error("parse error: {0}")]
    Parse(String),
}
