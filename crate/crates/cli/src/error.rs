use thiserror::Error;

use raman_core::{CoeffError, ConfigError, DistError, OracleError, RegimeError};

/// Command failures, grouped by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: parameter files, sweep specifications, quantity names,
    /// configurations outside a formula's regime.
    #[error("{0}")]
    Validation(String),
    /// A numerical guarantee of the exact oracle was violated.
    #[error("{0}")]
    Contract(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Contract(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<DistError> for CliError {
    fn from(e: DistError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<CoeffError> for CliError {
    fn from(e: CoeffError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<RegimeError> for CliError {
    fn from(e: RegimeError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Leakage { .. } | OracleError::NormDrift { .. } | OracleError::Unconverged { .. } => {
                CliError::Contract(e.to_string())
            }
            OracleError::Cutoff(_) | OracleError::DimensionCap { .. } | OracleError::Sweep(_) | OracleError::Config(_) => {
                CliError::Validation(e.to_string())
            }
        }
    }
}
