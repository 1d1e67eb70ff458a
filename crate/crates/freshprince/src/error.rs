use std::path::PathBuf;

/// Problems reading or writing the on-disk formats.
#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),
    #[error(transparent)]
    Core(#[from] freshprince_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl FormatError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        FormatError::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        FormatError::Io {
            path: path.into(),
            source,
        }
    }
}

/// Process exit status of the command line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Failure = 1,
    Usage = 2,
    Mismatch = 3,
    InsufficientData = 4,
}

/// An error tagged with the exit status it should produce.
#[derive(Debug, thiserror::Error)]
#[error("{source:#}")]
pub struct CliError {
    pub code: ExitCode,
    pub source: anyhow::Error,
}

impl CliError {
    pub fn new(code: ExitCode, source: impl Into<anyhow::Error>) -> Self {
        Self {
            code,
            source: source.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new(ExitCode::Usage, anyhow::anyhow!(message.into()))
    }
}

/// Exit status for a core error: shape problems are data/model mismatches,
/// too few comparison datasets is its own status, the rest are failures.
pub fn classify(err: &anyhow::Error) -> ExitCode {
    for cause in err.chain() {
        let core = cause.downcast_ref::<freshprince_core::Error>().or_else(|| match cause.downcast_ref::<FormatError>() {
            Some(FormatError::Core(e)) => Some(e),
            _ => None,
        });
        if let Some(e) = core {
            return match e {
                freshprince_core::Error::ShapeMismatch { .. } => ExitCode::Mismatch,
                freshprince_core::Error::InvalidConfig(_) => ExitCode::Usage,
                _ => ExitCode::Failure,
            };
        }
    }
    ExitCode::Failure
}
