use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("negative lower index {0} in binomial coefficient")]
    NegativeBinomial(i64),

    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: i64, max: i64 },

    #[error("weight parameter w = {0} must be even and at least 2")]
    BadWeight(i64),

    #[error("expected {expected} coefficients for w = {w}, found {found}")]
    LengthMismatch { w: usize, expected: usize, found: usize },

    #[error("degree {degree} exceeds w = {w}")]
    DegreeTooLarge { degree: usize, w: usize },

    #[error("singular matrix (determinant zero)")]
    SingularMatrix,

    #[error("series has zero lowest-order coefficient; cannot invert")]
    NotInvertible,

    #[error("level {0} is not a perfect square; the exact change of variable needs a rational sqrt(N), use the numeric pipeline")]
    NonSquareLevel(u64),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("polynomial is identically zero")]
    ZeroPolynomial,

    #[error("need at least {required} Fourier coefficients, only {available} available")]
    InsufficientCoefficients { required: usize, available: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("root finder did not converge after {0} iterations")]
    RootsNotConverged(usize),

    #[error("truncated sum for n = {} did not meet the stopping rule by k = {}", .0.n, .0.k_stop)]
    NotConverged(Box<crate::zeta::Thm2Report>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
