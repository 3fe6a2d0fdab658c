use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("structural error: {0}")]
    Structure(String),
    #[error("unsupported field characteristic {0}")]
    FieldChar(u64),
    #[error("operator of dimension {0} is not nilpotent")]
    NotNilpotent(usize),
    #[error("dual complex is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("missing transfer template for {0}")]
    MissingTemplate(String),
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
