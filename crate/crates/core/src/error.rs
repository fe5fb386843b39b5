use crate::arith::ArithError;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("precision exhausted at {bits} bits: {context}")]
    PrecisionExhausted { bits: u32, context: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("polynomial is not squarefree: gcd(f, f') = {0}")]
    NotSquarefree(String),
    #[error("no Tschirnhaus shift t <= {0} separates the subset sums")]
    ShiftSearchExhausted(u32),
    #[error("set resolvent of degree {degree} exceeds the factorization cap {cap}")]
    ResolventTooLarge { degree: usize, cap: usize },
    #[error("zero is a multiple root of the Laplacian polynomial (graph is disconnected)")]
    ZeroNotSimpleRoot,
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("no adjugate column is certified nonzero at a root of {0}")]
    NoNonzeroAdjugateColumn(String),
    #[error("block-Krylov determinant could not be decided")]
    UndecidedSingular,
    #[error("ill-conditioned recovery: {0}")]
    IllConditioned(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precision(bits: u32, context: impl Into<String>) -> Error {
        Error::PrecisionExhausted { bits, context: context.into() }
    }
}
