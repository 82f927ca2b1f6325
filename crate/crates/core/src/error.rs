use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("enumeration budget of {budget} candidates exceeded ({needed} needed)")]
    BudgetExceeded { budget: u64, needed: u128 },

    #[error("algebra is not finite dimensional (more than {limit} standard monomials)")]
    NotFiniteDimensional { limit: usize },

    #[error("mismatched objects: {0}")]
    Mismatch(String),

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::Mismatch(msg.into())
    }

    /// Process exit code for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 2,
            Error::OracleMismatch(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
