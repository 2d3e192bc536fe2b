use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}:{line}:{column}: {message}")]
    Parse { origin: String, line: usize, column: usize, message: String },
    #[error("{0}")]
    Shape(String),
    #[error("{0}")]
    Range(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] fse_core::Error),
}

impl CliError {
    /// Stable tag printed as `error[<kind>]`.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Shape(_) => "shape",
            CliError::Range(_) => "range",
            CliError::Io(_) => "io",
            CliError::Usage(_)
            | CliError::Core(fse_core::Error::TooLarge { .. } | fse_core::Error::TooSmall { .. }) => "usage",
            CliError::Core(_) => "invalid",
        }
    }

    /// 1 invalid input object, 2 usage, 3 unreadable or malformed file.
    pub fn exit_code(&self) -> u8 {
        match self.kind() {
            "invalid" => 1,
            "usage" => 2,
            _ => 3,
        }
    }
}
