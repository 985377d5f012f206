use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Invalid root-system family/rank, Coxeter word, or other configuration.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// The operation is not defined for this input (e.g. closure on a
    /// non-crystallographic system).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An argument violates a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// Root sets from two different systems were combined.
    #[error("root sets belong to different systems")]
    MixedSystems,
    /// A configured size cap was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A structural property that the theory guarantees did not hold.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("no intrinsic characterization is known for {0}; use construction membership")]
    NoCharacterization(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
