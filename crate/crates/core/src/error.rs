use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid family parameters: {0}")]
    InvalidParameter(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("fusing adjacent vertices {0} and {1} would create a loop")]
    Loop(usize, usize),

    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),

    #[error("unknown variable name `{0}`")]
    UnknownVariable(String),

    #[error("monomial lies in the ideal")]
    Membership,

    #[error("{count} variables exceeds the limit of {limit}")]
    TooManyVariables { count: usize, limit: usize },

    #[error("{count} generators exceeds the limit of {limit}")]
    TooManyGenerators { count: usize, limit: usize },

    #[error("characteristic {0} is not a supported prime")]
    NotPrime(u32),

    #[error("ideal has a generator of degree {0}; an ideal generated in degree at most 2 is required")]
    NotQuadratic(usize),

    #[error("the unit ideal has no quotient ring invariants")]
    UnitIdeal,

    #[error("{0} is outside the parameter range the closed form covers")]
    OutOfStatedRange(String),

    #[error("rule {rule} does not apply: {reason}")]
    RuleInapplicable { rule: String, reason: String },

    #[error("recursion depth cap of {0} exceeded")]
    RecursionDepth(usize),

    #[error("unknown result id `{0}`")]
    UnknownTheorem(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
