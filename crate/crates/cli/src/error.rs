use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// Any error tied to an input file.
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: Box<CliError>,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid process document: {0}")]
    Document(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] tanner_zx::Error),
}

impl CliError {
    pub fn in_file(self, path: impl Into<String>) -> CliError {
        CliError::File { path: path.into(), source: Box::new(self) }
    }

    /// The innermost error, past any file annotations.
    pub fn root(&self) -> &CliError {
        match self {
            CliError::File { source, .. } => source.root(),
            other => other,
        }
    }
}
