use thiserror::Error;

use crate::value::Value;

/// Errors raised by parsing, chain construction and the key-polynomial calculus.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("division by zero denominator")]
    DivisionByZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("divisor must be monic of degree >= 1")]
    BadDivisor,

    #[error("derivative order must be >= 1")]
    ZeroDerivativeOrder,

    #[error("epsilon is undefined for constant or zero polynomials")]
    EpsilonUndefined,

    #[error("gamma must be finite")]
    InfiniteGamma,

    #[error("gamma not greater than current value of Q (current value {current})")]
    GammaNotGreater { current: Value },

    #[error("augmentation key degree {new} is below the last key degree {last}")]
    DegreeDecrease { new: usize, last: usize },

    #[error("key polynomial check failed: {0}")]
    KeyCheckFailed(String),

    #[error("step index {index} out of range for chain of length {len}")]
    StepIndex { index: usize, len: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("coefficient set must be nonempty and contain 0 and 1")]
    BadCoefficientSet,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("internal verification failed (this indicates a bug): {0}")]
    Verification(String),

    #[error("unknown demo '{0}'")]
    UnknownDemo(String),
}

pub type Result<T> = std::result::Result<T, Error>;
