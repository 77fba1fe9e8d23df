use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] wirediag::Error),

    #[error("line {line}: {source}")]
    Input { line: usize, source: wirediag::Error },

    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("config {}: {message}", .path.display())]
    Config { path: PathBuf, message: String },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 for an exhausted budget, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(wirediag::Error::BudgetExceeded(_)) => 2,
            _ => 1,
        }
    }
}
