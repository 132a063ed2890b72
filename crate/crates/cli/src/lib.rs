//! Batch pipeline behind the `green-etale` binary.

pub mod config;
pub mod fuzz;
pub mod pipeline;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Math(#[from] green_etale::Error),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

impl CliError {
    /// 2 for invalid input, 3 for internal failures.
    pub fn exit_code(&self) -> u8 {
        use green_etale::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Math(E::Internal(_) | E::Descent(_)) | CliError::Internal(_) => 3,
            CliError::Math(_) => 2,
        }
    }
}
