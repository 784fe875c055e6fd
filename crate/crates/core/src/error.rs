use thiserror::Error;

/// Errors raised by the exact-arithmetic and dynamics routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("numbers live in different quadratic fields: Q(sqrt({left})) and Q(sqrt({right}))")]
    FieldMismatch { left: u64, right: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not square-free")]
    NotSquareFree(u64),

    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("literal mixes incompatible radicands sqrt({first}) and sqrt({second})")]
    MixedFields { first: u64, second: u64 },

    #[error("parameters must satisfy 0 < alpha < beta < 1")]
    OrderViolation,

    #[error("point {0} lies outside [0, 1)")]
    OutOfDomain(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("transformation is not minimal (1 - alpha and beta are rationally dependent)")]
    NotMinimal,

    #[error("iteration cap {cap} exceeded while {state}")]
    CapExceeded { cap: usize, state: String },

    #[error("{0} is not a factor of the language")]
    NotAFactor(String),

    #[error("unknown letter '{0}'")]
    UnknownLetter(char),

    #[error("morphism is not an endomorphism")]
    NotEndomorphism,

    #[error("malformed morphism: {0}")]
    MorphismSyntax(String),

    #[error("conjugate chain cycles; the fixed point is periodic")]
    PeriodicCycle,

    #[error("'{0}' cannot seed a fixed point: its image must start with it and have length at least 2")]
    NotASubstitutionSeed(char),

    #[error("morphism is not primitive")]
    NotPrimitive,

    #[error("degenerate: {reason}")]
    Degenerate {
        reason: String,
        witness: Option<[i64; 3]>,
    },

    #[error("eigenvalues do not lie in a real quadratic field: {0}")]
    FieldEscape(String),
}

impl Error {
    /// Stable machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::FieldMismatch { .. } => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::NotSquareFree(_) => "NotSquareFree",
            Error::Syntax { .. } => "SyntaxError",
            Error::MixedFields { .. } => "MixedFields",
            Error::OrderViolation => "OrderViolation",
            Error::OutOfDomain(_) => "OutOfDomain",
            Error::InvalidInterval(_) => "InvalidInterval",
            Error::NotMinimal => "NotMinimal",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::NotAFactor(_) => "NotAFactor",
            Error::UnknownLetter(_) => "UnknownLetter",
            Error::NotEndomorphism => "NotEndomorphism",
            Error::MorphismSyntax(_) => "MorphismSyntax",
            Error::PeriodicCycle => "PeriodicCycle",
            Error::NotASubstitutionSeed(_) => "NotASubstitutionSeed",
            Error::NotPrimitive => "NotPrimitive",
            Error::Degenerate { .. } => "Degenerate",
            Error::FieldEscape(_) => "FieldEscape",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
