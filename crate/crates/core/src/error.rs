use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at position {pos}")]
    UnknownVariable { pos: usize, name: char },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("degree ceiling {limit} exceeded")]
    DegreeCeiling { limit: u32 },
    #[error("term limit {limit} exceeded")]
    TermLimit { limit: usize },
    #[error("degree bound {bound} is below generator degree {degree}")]
    DegreeBound { bound: u32, degree: u32 },
    #[error("not quasi-F-split up to height {0}")]
    NotQuasiFSplit(u32),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown type tag '{0}'")]
    UnknownType(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Input errors are the caller's fault; everything else is a limit or a bug.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownVariable { .. }
                | Error::NotPrime(_)
                | Error::UnknownType(_)
                | Error::InvalidInput(_)
                | Error::ModulusMismatch { .. }
        )
    }
}
