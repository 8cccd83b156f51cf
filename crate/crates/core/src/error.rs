use thiserror::Error;

/// Failures of the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("operands live in different coefficient fields")]
    DomainMismatch,
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("resultant of two constants is undefined")]
    ConstantResultant,
    #[error("discriminant of a constant is undefined")]
    ConstantDiscriminant,
    #[error("polynomial is reducible, found factor {0}")]
    Reducible(String),
    /// `F(0, v)` vanishes identically; carries the power of `u` dividing `F`.
    #[error("germ is not v-general (divisible by u^{0})")]
    NotVGeneral(usize),
    #[error("germ is not reduced")]
    NonReduced,
    #[error("precision cap {cap} reached without a certified order")]
    PrecisionCap { cap: usize },
}

/// Top-level error type of the pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not homogeneous: found degrees {0} and {1}")]
    Inhomogeneous(usize, usize),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point is not on both curves")]
    NotOnIntersection,
    #[error("curve shares a component with the Fermat curve")]
    SharedComponent,
    #[error("curve is reducible over Q: factor {0}")]
    Reducible(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
