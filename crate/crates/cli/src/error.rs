use std::process::ExitCode;

use qlight_netlist::NetlistError;

/// Failure of a subcommand, classified by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
        })
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        CliError::Usage(format!("{}: {e}", path.display()))
    }
}

impl From<qlight::Error> for CliError {
    fn from(e: qlight::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<NetlistError> for CliError {
    fn from(e: NetlistError) -> Self {
        match e {
            NetlistError::Parse(_) | NetlistError::Result(_) => CliError::Parse(e.to_string()),
            NetlistError::Io(m) => CliError::Usage(m),
            NetlistError::Validation(_) | NetlistError::Core(_) => {
                CliError::Validation(e.to_string())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
