use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("non-homogeneous entry ({row}, {col}): {msg}")]
    NonHomogeneous { row: usize, col: usize, msg: String },
    #[error("object does not live on site {site}: {msg}")]
    SiteMismatch { site: String, msg: String },
    #[error("not a heart object: {0}")]
    NotInHeart(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("weight window too small: {0}")]
    Window(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
