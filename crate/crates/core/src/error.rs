use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{input}`: {msg}")]
pub struct ParseError {
    pub input: String,
    pub msg: String,
}

impl ParseError {
    pub fn new(input: &str, msg: impl Into<String>) -> Self {
        ParseError {
            input: input.to_string(),
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    Validation(String),

    #[error("resource cap exceeded: {what} would exceed the limit of {limit}")]
    ResourceCap { what: String, limit: u64 },

    #[error("verification failed: {0}")]
    Mismatch(String),

    /// A combinatorial case the construction does not resolve uniquely.
    #[error("ambiguous instance: {0}")]
    Ambiguity(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_) | Error::Parse(_) => 2,
            Error::ResourceCap { .. } => 3,
            Error::Mismatch(_) | Error::Ambiguity(_) => 4,
            Error::Io(_) | Error::Json(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Validation(_) => "validation",
            Error::Parse(_) => "parse",
            Error::ResourceCap { .. } => "resource_cap",
            Error::Mismatch(_) => "mismatch",
            Error::Ambiguity(_) => "ambiguity",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
