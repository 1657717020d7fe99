use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("quiver error: {0}")]
    Quiver(String),
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("operands belong to different quivers")]
    MixedQuiver,
    #[error("unknown name `{0}`")]
    Unknown(String),
    #[error("expected {expected}, found {found}")]
    Kind { expected: String, found: String },
    #[error("map is not skew on the test family: {0}")]
    NonSkew(String),
    #[error("not a regular endomorphism: {0}")]
    NotRegular(String),
    #[error("representation error: {0}")]
    Repr(String),
    #[error("{0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
