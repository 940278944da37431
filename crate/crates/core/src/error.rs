use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid bracket index: {0}")]
    InvalidIndex(String),

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("letter z({s},{r}) is outside the alphabet required by {context}")]
    Alphabet {
        s: u32,
        r: u32,
        context: &'static str,
    },

    #[error("q must lie strictly between 0 and 1, got {0}")]
    QOutOfRange(f64),

    #[error("inadmissible: {0}")]
    Inadmissible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Cache(e.to_string())
    }
}
