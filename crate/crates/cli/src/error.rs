use std::path::PathBuf;

/// One problem found while validating a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigIssue {
    pub message: String,
    /// The physics is ill-posed (unbound channel) rather than the file malformed.
    pub domain: bool,
}

impl ConfigIssue {
    pub(crate) fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            domain: false,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration:\n{}", format_issues(.0))]
    Config(Vec<ConfigIssue>),
    #[error(transparent)]
    Core(#[from] harmonium::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Schema { path: PathBuf, message: String },
}

fn format_issues(issues: &[ConfigIssue]) -> String {
    issues
        .iter()
        .map(|i| format!("  - {}", i.message))
        .collect::<Vec<_>>()
        .join("\n")
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for configuration and argument errors, 3 for numerical failures,
    /// 4 for ill-posed physics, 1 for I/O.
    pub fn exit_code(&self) -> u8 {
        use harmonium::Error as E;
        match self {
            Self::Config(issues) if !issues.is_empty() && issues.iter().all(|i| i.domain) => 4,
            Self::Config(_) => 2,
            Self::Core(E::Argument(_) | E::OutOfRange { .. }) => 2,
            Self::Core(E::Numerical(_) | E::Capability(_)) => 3,
            Self::Core(E::Domain(_)) => 4,
            Self::Io { .. } | Self::Schema { .. } => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        use harmonium::Error as E;
        match self {
            Self::Config(_) => "config",
            Self::Core(E::Argument(_) | E::OutOfRange { .. }) => "argument",
            Self::Core(E::Numerical(_)) => "numerical",
            Self::Core(E::Capability(_)) => "capability",
            Self::Core(E::Domain(_)) => "domain",
            Self::Io { .. } => "io",
            Self::Schema { .. } => "schema",
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
