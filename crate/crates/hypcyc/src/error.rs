use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("boundary truncation: {0}")]
    BoundaryTruncation(String),
    #[error("margin exhausted while filling {0}")]
    MarginExhausted(String),
    #[error("closure audit failed at {0}")]
    ClosureAudit(String),
    #[error("internal consistency: {0}")]
    Consistency(String),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
