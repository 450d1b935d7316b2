use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors shared by every module.
///
/// [`Error::name`] gives the stable identifier printed by the command line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} is not invertible")]
    NotInvertible(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("operands live over different coefficient fields or variable universes")]
    FieldMismatch,
    #[error("operation needs a prime field")]
    NotPrimeField,
    #[error("empty input")]
    EmptyInput,
    #[error("negative exponents cannot be flattened")]
    LaurentNotFlattenable,
    #[error(
        "level {requested} is not a multiple of the minimal level {minimal} for variable {var}"
    )]
    InsufficientLevel {
        var: usize,
        minimal: String,
        requested: String,
    },
    #[error("exponent {0} does not fit the flattened representation")]
    ExponentTooLarge(String),
    #[error("constant input")]
    ConstantInput,
    #[error("polynomial involves more than one variable")]
    NotUnivariate,
    #[error("target degree {target} is below the total degree {degree}")]
    DegreeTooSmall { target: String, degree: String },
    #[error("exponent denominator {denominator} does not divide root order {root_order}")]
    RootOrderMismatch {
        denominator: String,
        root_order: String,
    },
    #[error("negative exponent evaluated at a zero coordinate (variable {0})")]
    PoleAtPoint(usize),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("point is not on the variety (generator {0} does not vanish)")]
    PointNotOnVariety(usize),
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error("degree {degree} is not representable at denominator level {level}")]
    DegreeLevelMismatch { degree: String, level: u64 },
    #[error("box bound {bound} is below |m| = {degree}")]
    BoxTooSmall { bound: String, degree: String },
    #[error("composition is not a polynomial: {0}")]
    CompositionNotPolynomial(String),
    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable index {index} outside a universe of {nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::NotInvertible(_) => "NotInvertible",
            Error::NotPrime(_) => "NotPrime",
            Error::FieldMismatch => "FieldMismatch",
            Error::NotPrimeField => "NotPrimeField",
            Error::EmptyInput => "EmptyInput",
            Error::LaurentNotFlattenable => "LaurentNotFlattenable",
            Error::InsufficientLevel { .. } => "InsufficientLevel",
            Error::ExponentTooLarge(_) => "ExponentTooLarge",
            Error::ConstantInput => "ConstantInput",
            Error::NotUnivariate => "NotUnivariate",
            Error::DegreeTooSmall { .. } => "DegreeTooSmall",
            Error::RootOrderMismatch { .. } => "RootOrderMismatch",
            Error::PoleAtPoint(_) => "PoleAtPoint",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::PointNotOnVariety(_) => "PointNotOnVariety",
            Error::MalformedComplex(_) => "MalformedComplex",
            Error::DegreeLevelMismatch { .. } => "DegreeLevelMismatch",
            Error::BoxTooSmall { .. } => "BoxTooSmall",
            Error::CompositionNotPolynomial(_) => "CompositionNotPolynomial",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::UnknownVariable(_) => "UnknownVariable",
            Error::VariableOutOfRange { .. } => "VariableOutOfRange",
            Error::ArityMismatch { .. } => "ArityMismatch",
        }
    }
}
