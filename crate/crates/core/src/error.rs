use thiserror::Error;

/// Errors raised by the verification kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("kappa undefined: log|t| - 2.59 is not certified positive for |t| = {0}")]
    UndefinedKappa(String),

    #[error("indeterminate: divisor ball contains zero")]
    Indeterminate,

    #[error("mixed fields: d = {0} and d = {1}")]
    MixedField(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("valuation error: {0}")]
    Valuation(String),

    #[error("degenerate Pade system for [{num}/{den}]")]
    DegeneratePade { num: usize, den: usize },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("certification failure: {0}")]
    Certification(String),

    #[error("integrality violation: {0}")]
    Integrality(String),

    #[error("tie between root distances at maximum precision")]
    Tie,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search cap exceeded: {0}")]
    SearchCap(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Errors caused by the caller's input rather than by the engine.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Precondition(_) | Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
