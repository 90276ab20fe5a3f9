use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument or instance data.
    #[error("input error: {0}")]
    Input(String),

    /// A malformed dataset line.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Exhaustive enumeration refused because the ground set is too large.
    #[error("enumeration over {size} elements exceeds the limit of {limit}")]
    TooLarge { size: usize, limit: usize },

    /// An operation was called in a state that forbids it.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, message: msg.into() }
    }
}
