use thiserror::Error;

/// Errors raised by the algebra, ambient and jet layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// Two series built over different variable alphabets were combined.
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(String, String),

    /// A term at or above the validity bound was requested.
    #[error("validity: weight {requested} requested but series is only valid below {valid}")]
    Validity { requested: i32, valid: i32 },

    /// An operation needs more validity than its input carries.
    #[error("insufficient validity: need valid weight {required}, have {available}")]
    InsufficientValidity { required: i32, available: i32 },

    /// The linear system has no solution.
    #[error("linear system has no solution")]
    NoSolution,

    /// `div_L` was applied to a series outside the ideal (L).
    #[error("series is not divisible by L (first failing weight stratum {weight})")]
    NotDivisible { weight: i32 },

    #[error("matrix does not preserve the defining form L")]
    NotIsometry,

    #[error("group element does not lie in the parabolic subgroup P")]
    NotInParabolic,

    #[error("bidegree mismatch: expected {expected:?}, found {found:?}")]
    Bidegree { expected: (i32, i32), found: (i32, i32) },

    /// Sampled group elements failed to certify a classification result.
    #[error("insufficient sampling: basis element fails invariance under {element}")]
    InsufficientSampling { element: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A consistency check that the mathematics guarantees has failed.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
