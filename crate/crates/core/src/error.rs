use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,

    #[error("irreducibility is not defined for constant polynomials")]
    ConstantPolynomial,

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("invalid prime modulus: {0}")]
    InvalidPrime(String),

    #[error("operands belong to different rings or fields")]
    ContextMismatch,

    #[error("lambda lies in F_q (lambda^q = lambda), so the Legendre normalization degenerates")]
    DegenerateLambda,

    #[error("Delta must be nonzero for a rank-2 Drinfeld module")]
    ZeroDelta,

    #[error("gamma(T) is zero")]
    ZeroGamma,

    #[error("the structure map does not send p(T) to zero in the coefficient field")]
    CharacteristicMismatch,

    #[error("g-recurrence broke down at k = {k}: division by T^(q^k) - T is not exact")]
    RecurrenceBreakdown { k: usize },

    #[error("denominator did not cancel while forming H(s): {0}")]
    DenominatorMismatch(String),

    #[error("ambient field too small: found {found} of {expected} roots")]
    AmbientTooSmall { found: usize, expected: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, Error>;
