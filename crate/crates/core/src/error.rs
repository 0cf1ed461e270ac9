use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("inconsistent orientation: {0}")]
    Orientation(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("diagram is not a knot ({components} components)")]
    NotAKnot { components: usize },

    #[error("link is not algebraically split: lk({0}, {1}) = {2}")]
    NotAsl(usize, usize, i64),

    #[error("framing is not unit: component {component} has framing {framing}")]
    NotUnitFramed { component: usize, framing: i64 },

    #[error("divisibility failure: {0}")]
    Divisibility(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::Orientation(_)
            | Error::NotAKnot { .. }
            | Error::NotAsl(..)
            | Error::NotUnitFramed { .. }
            | Error::InvalidArgument(_) => 2,
            Error::ResourceLimit(_) | Error::Divisibility(_) => 3,
            Error::Io(_) | Error::Corpus { .. } => 4,
            Error::InvariantViolation(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
