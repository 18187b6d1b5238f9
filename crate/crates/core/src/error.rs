use thiserror::Error;

/// Failure modes shared by every module of the crate.
///
/// The variants map onto the CLI exit codes: configuration, parse and usage
/// errors exit with 2, domain errors with 3, i/o failures and violated
/// invariants with 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Invalid algebra or enumeration configuration (bad rank, bound exceeded).
    #[error("configuration error: {0}")]
    Config(String),

    /// An operation was called outside its contract (mismatched algebras,
    /// index out of range, precondition violated).
    #[error("usage error: {0}")]
    Usage(String),

    /// The mathematical object does not exist for the given input
    /// (degenerate bundle, Einstein sign not admitted, point outside the domain).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed textual input; `offset` is a byte offset into the input.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// Reading or writing an output file failed.
    #[error("i/o error: {0}")]
    Io(String),

    /// A computed object failed one of the crate's own consistency checks.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Usage(_) | Error::Parse { .. } => 2,
            Error::Domain(_) => 3,
            Error::Io(_) | Error::Invariant(_) => 1,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
