use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a preorder degree sequence: {0}")]
    InvalidSequence(String),

    #[error("degree sum is {sum}, expected {expected}")]
    BadSum { sum: u64, expected: u64 },

    #[error("{what}: {requested} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u64,
        cap: u64,
    },

    #[error("size {n} is unreachable for offspring span {span} (need size = 1 mod {span})")]
    IncompatibleSize { n: u64, span: u32 },

    #[error("rejection sampler gave up after {attempts} attempts")]
    RejectionLimitExceeded { attempts: u64 },

    #[error("schedule source {index} is already burning when selected")]
    SourceAlreadyBurning { index: usize },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 configuration or I/O error, 3
    /// sampling failure, 4 internal invariant violation. (1 is reserved for a
    /// failed verification property.)
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::RejectionLimitExceeded { .. } => 3,
            Error::InvariantViolation(_) => 4,
            _ => 2,
        }
    }
}
