use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input, or a bad flag combination.
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] ennea_core::Error),
}

impl CliError {
    /// 1 when a structural hypothesis fails, 2 for input and usage problems.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(ennea_core::Error::Hypothesis(_)) => 1,
            _ => 2,
        }
    }
}
