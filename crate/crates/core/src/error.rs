/// Error taxonomy shared by every module in the crate.
///
/// Structural problems in user-supplied data are `Input`; violated operation
/// preconditions are `Precondition`; size caps are `Resource`. `Parse` is
/// reserved for the document loader so the CLI can map it to its own exit
/// code.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("colimit missing: {0}")]
    ColimitMissing(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("missing fixture: {0}")]
    MissingFixture(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::TypeMismatch(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
