use thiserror::Error;

/// Errors raised by the engine. Variants map onto the CLI exit codes via [`Error::exit_code`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("not a positive root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("invalid class: {0}")]
    InvalidClass(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("enumeration cap exceeded: {what} needs {needed} > cap {cap}")]
    CapExceeded { what: String, needed: String, cap: u64 },
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("hold-out mismatch for {triple}: polynomial gives {predicted} at q={prime}, count is {counted}")]
    HoldoutMismatch { triple: String, prime: u64, predicted: String, counted: String },
    #[error("structure table does not cover {0}")]
    WindowMiss(String),
    #[error("non-integral value: {0}")]
    NonIntegral(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("malformed record: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            Error::HoldoutMismatch { .. } | Error::VerificationFailed(_) => 4,
            Error::InvalidQuiver(_)
            | Error::Config(_)
            | Error::Parse(_)
            | Error::InvalidField(_)
            | Error::NotARoot(_)
            | Error::InvalidClass(_) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "invalid_field",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::InvalidQuiver(_) => "invalid_quiver",
            Error::NotARoot(_) => "not_a_root",
            Error::InvalidClass(_) => "invalid_class",
            Error::InvalidMorphism(_) => "invalid_morphism",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::Inconsistent(_) => "inconsistent",
            Error::RingMismatch => "ring_mismatch",
            Error::HoldoutMismatch { .. } => "holdout_mismatch",
            Error::WindowMiss(_) => "window_miss",
            Error::NonIntegral(_) => "non_integral",
            Error::VerificationFailed(_) => "verification_failed",
            Error::Config(_) => "config",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
