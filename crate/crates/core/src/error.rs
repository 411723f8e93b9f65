use thiserror::Error;

/// Errors raised by the exact-arithmetic layers.
///
/// Most of these are bug signals: a correct build never produces them for the
/// families shipped here, so callers should surface them rather than recover.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-exact division: {dividend} / {divisor} leaves a remainder")]
    NonExactDivision { dividend: String, divisor: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("series constant term {0} is not a unit")]
    NonUnitConstantTerm(String),

    #[error("matrix of dimension {dim} exceeds the cofactor limit of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("determinant engines disagree for {spec}: {outputs}")]
    EngineDisagreement { spec: String, outputs: String },

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("expected an integer, got {0}")]
    NonIntegerResult(String),

    #[error("zero divisor p_{m}(t, {n}) encountered in the condensation recursion")]
    ZeroDivisorEncountered { m: usize, n: usize },

    #[error("no closed-form backward prediction for family {0}")]
    UnsupportedFamily(String),

    #[error("engine {0} is unavailable for this matrix")]
    EngineUnavailable(String),

    #[error("cannot parse polynomial {input:?}: {reason}")]
    ParsePoly { input: String, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
