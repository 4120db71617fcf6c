use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error("composition arity mismatch: {left} bottom vertices against {right} top vertices")]
    ArityMismatch { left: usize, right: usize },
    #[error("diagram is not {0}-tone")]
    NotTone(usize),
    #[error("tone parameter must be at least 1")]
    ZeroTone,
    #[error("{0}")]
    InvalidArgument(String),
    #[error("label {label} is not valid for l={l}, n={n}")]
    InvalidLabel { label: String, l: usize, n: usize },
    #[error("term with vector {found} is neither equal to nor below {expected}")]
    UnexpectedVector { found: String, expected: String },
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("element parameters differ: {0}")]
    Incompatible(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
