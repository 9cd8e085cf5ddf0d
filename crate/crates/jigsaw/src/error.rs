use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] jigsaw_core::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("no grid points bracket a solve fraction of 1/2: {0}")]
    NoBracket(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("config: {0}")]
    Config(String),
    #[error("output: {0}")]
    Output(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status: 2 for bad input or usage, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Core(_)
            | Error::Parse { .. }
            | Error::Io { .. }
            | Error::Refused(_)
            | Error::Config(_) => 2,
            Error::NoBracket(_) | Error::Output(_) => 1,
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Output(e.to_string())
    }
}
