use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [3, 2^31)")]
    BadModulus(u64),
    #[error("parameter too large: {0}")]
    ParameterTooLarge(String),
    #[error("size budget exceeded: {what} needs {cells} matrix cells, budget is {budget}")]
    SizeBudget {
        what: String,
        cells: u128,
        budget: u128,
    },
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("hypersurface is not certified smooth: {0}")]
    NotSmooth(String),
    #[error("sampling failed after {attempts} attempts: {what}")]
    SamplingFailed { what: String, attempts: usize },
    #[error("hodge level undefined for the all-zero vector")]
    UndefinedLevel,
}
