use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },

    #[error("atom {0} appears more than once")]
    DuplicateAtom(String),

    #[error("weight {index} is not strictly positive ({value})")]
    NonPositiveWeight { index: usize, value: String },

    #[error("weights sum to {0}, expected 1")]
    WeightSum(String),

    #[error("point index {index} out of range for a {n}-point space")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("measures live on different spaces")]
    SpaceMismatch,

    #[error("operation requires a measure on the real line")]
    NotOnLine,

    #[error("measure is not finitely supported")]
    NotFinitelySupported,

    #[error("epsilon must be strictly positive, got {0}")]
    NonPositiveEpsilon(String),

    #[error("combined support of {size} atoms exceeds the enumeration cap of {cap}; use the flow method")]
    CapacityExceeded { size: usize, cap: usize },

    #[error("malformed flow network: {0}")]
    MalformedNetwork(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
