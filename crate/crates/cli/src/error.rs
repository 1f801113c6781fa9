use thiserror::Error;

/// Exit code for malformed invocations and unreadable input.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for degenerate geometry (no unique answer exists).
pub const EXIT_DEGENERATE: i32 = 2;
/// Exit code for numeric failures (tolerances, domains, series).
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}:{line}: {message}")]
    Parse { origin: String, line: usize, message: String },
    #[error(transparent)]
    Geometry(#[from] quadric_ga::Error),
}

impl CliError {
    pub fn parse(origin: &str, line: usize, message: impl Into<String>) -> Self {
        CliError::Parse { origin: origin.to_string(), line, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        use quadric_ga::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Geometry(e) => match e {
                E::DegenerateConfiguration
                | E::SingularPoint
                | E::CoincidentPoints
                | E::ParallelPlanes
                | E::LineInQuadric
                | E::ZeroQuadric
                | E::InvalidLine(_)
                | E::PointAtInfinity => EXIT_DEGENERATE,
                E::InvalidAxisPair { .. } => EXIT_USAGE,
                _ => EXIT_NUMERIC,
            },
        }
    }
}
