use thiserror::Error;

/// Errors raised by the reduction machinery and the problem loader.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("input must be a nonzero polynomial")]
    ZeroPolynomial,

    #[error("polynomials are not coprime: gcd = {0}")]
    NotCoprime(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("elements do not form a basis of A: {0}")]
    NotABasis(String),

    #[error("e = {0} is not squarefree; the basis cannot be a global integral basis")]
    NotSquarefree(String),

    #[error("degree condition violated: {0}")]
    DegreeBound(String),

    #[error("the linear system modulo {modulus} is singular: basis not locally integral at a root of {modulus}")]
    SingularModular { modulus: String },

    #[error("t-action is inconsistent with L: {0}")]
    InconsistentAction(String),

    #[error("normalization at infinity did not terminate within the exponent bound {bound}")]
    NonTermination { bound: i64 },

    #[error("elements live in different modules")]
    ContextMismatch,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no telescoper of order <= {max_order} found (inconclusive)")]
    Inconclusive { max_order: usize },

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
