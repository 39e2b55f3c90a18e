use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by an element of norm zero")]
    ZeroDivisor,
    #[error("catalog schema error: {0}")]
    Schema(String),
    #[error("catalog invariant failure: {}", .0.join("; "))]
    Invariant(Vec<String>),
    #[error("unknown pair `{0}`")]
    UnknownPair(String),
    #[error("insufficient catalog data for {pair}: {what}")]
    MissingData { pair: String, what: String },
    #[error("inadmissible: {0}")]
    Inadmissible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("test inapplicable: {0}")]
    Inapplicable(String),
    #[error("census discrepancy for {pair}: {detail}")]
    Discrepancy { pair: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
