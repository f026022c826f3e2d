use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported prime {0}")]
    UnsupportedPrime(u64),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("polynomial is not homogeneous of the required degree")]
    NotHomogeneous,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid degree matrix: {0}")]
    InvalidDegreeMatrix(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("degree {nu} is below the validity bound {bound}")]
    Range { nu: i64, bound: i64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no majority among seeds: {0}")]
    DegenerateSeeds(String),
    #[error("lift failed: {0}")]
    LiftFailure(String),
    #[error("cocycles are linearly dependent")]
    DependentCocycles,
    #[error("requested {requested} independent classes, only {available} available")]
    NotEnoughClasses { requested: usize, available: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
