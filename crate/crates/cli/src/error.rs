use thiserror::Error;

/// Process exit status for each failure class.
pub mod exit {
    pub const OK: i32 = 0;
    pub const DOMAIN: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const DISCONNECTED: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or flag values.
    #[error("{0}")]
    Usage(String),

    /// An input file that does not parse or validate.
    #[error("{0}")]
    Parse(String),

    /// A well-formed request outside the domain of the computation.
    #[error("{0}")]
    Domain(#[from] qnetbound::Error),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => exit::USAGE,
            CliError::Domain(qnetbound::Error::Disconnected { .. }) => exit::DISCONNECTED,
            CliError::Domain(_) | CliError::Io { .. } => exit::DOMAIN,
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}
