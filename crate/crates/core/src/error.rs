use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31 - 1]")]
    InvalidPrime(u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid relation: {0}")]
    Relation(String),
    #[error("ideal is not admissible: {0}")]
    Admissibility(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("objects live over different algebras")]
    AlgebraMismatch,
    #[error("algebra is not self-injective")]
    NotSelfInjective,
    #[error("algebra is not symmetric")]
    NotSymmetric,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("decomposition inconclusive after {0} attempts")]
    DecompositionInconclusive(usize),
    #[error("isomorphism test inconclusive after {0} attempts")]
    IsoInconclusive(usize),
    #[error("no socle element in Hom(Z, nu Z); input is not indecomposable")]
    NoSocleElement,
    #[error("unexpected middle term: {0}")]
    MiddleDecompositionUnexpected(String),
    /// A computed object failed one of its own certificates.
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code: 1 property failure, 2 parse or validation, 3
    /// precondition, 4 budget.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Inconsistent(_)
            | Error::MiddleDecompositionUnexpected(_)
            | Error::DecompositionInconclusive(_)
            | Error::IsoInconclusive(_) => 1,
            Error::NotSelfInjective | Error::NotSymmetric | Error::Precondition(_) | Error::NoSocleElement => 3,
            Error::Budget(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
