use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    #[error("unsupported range: {0}")]
    Unsupported(String),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("cell budget exceeded: {cells} > {budget}")]
    CellBudget { cells: u64, budget: u64 },
    #[error("bracketing failure: {0}")]
    Bracket(String),
    #[error("size error: {0}")]
    Size(String),
    #[error("witness not found: {0}")]
    WitnessNotFound(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
