use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid q-spec: {0}")]
    Spec(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("inadmissible three-vertex ({0},{1},{2})")]
    Inadmissible(u32, u32, u32),
    #[error("vanishing denominator: {0}")]
    Vanishing(String),
    #[error("projector undefined at this q: size {size} needs size < p(q) = {order}")]
    JwUndefined { size: u32, order: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("index out of range: {0}")]
    Range(String),
    #[error("invalid pattern: {0}")]
    Pattern(String),
    #[error("unsupported in this mode: {0}")]
    Mode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
