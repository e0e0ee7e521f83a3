use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("rank too high: eigenvalue {value:.3e} at index {index} exceeds tolerance {tol:.3e} (target rank {rank})")]
    RankTooHigh {
        rank: usize,
        index: usize,
        value: f64,
        tol: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_) => 2,
            Error::NumericalFailure(_) | Error::RankTooHigh { .. } => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
