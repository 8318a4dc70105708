use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-invertible series")]
    NonInvertibleSeries,
    #[error("sqrt requires unit constant term")]
    SqrtNonUnit,
    #[error("malformed rational {0:?} (expected \"p/q\" or an integer)")]
    Parse(String),
}

/// An ensemble parameter outside its admissible range.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid parameter `{field}`: {reason}")]
pub struct ParamError {
    pub field: &'static str,
    pub reason: String,
}

impl ParamError {
    pub fn new(field: &'static str, reason: impl Into<String>) -> Self {
        ParamError {
            field,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("invalid path model: {0}")]
    InvalidModel(String),
    #[error("enumeration bound: max_steps {requested} exceeds limit {limit}")]
    EnumerationBound { requested: usize, limit: usize },
    #[error("path is not admissible: {0}")]
    Inadmissible(String),
    #[error("unknown step symbol {0:?}")]
    BadSymbol(char),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenFuncError {
    #[error("singular functional equation")]
    Singular,
    #[error("functional equation requires F(0) = 1")]
    BadConstantTerm,
    #[error("requested order {requested} exceeds equation truncation {available}")]
    OrderTooHigh { requested: usize, available: usize },
    #[error("generating-function mismatch at x^{power}: closed form {closed}, functional equation {solved}")]
    Mismatch {
        power: usize,
        closed: String,
        solved: String,
    },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Param(#[from] ParamError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McError {
    #[error("need N≥2")]
    NeedTwoParticles,
    #[error("invalid chain config: {0}")]
    Config(String),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("delay-time weight not integrable: {0}")]
    NotIntegrable(String),
}

/// Crate-level error for entry points that span several modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    GenFunc(#[from] GenFuncError),
    #[error(transparent)]
    Mc(#[from] McError),
    #[error("{0}")]
    Other(String),
}
