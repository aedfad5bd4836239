use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different quadratic fields (sqrt({0}) and sqrt({1}))")]
    MixedField(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the map has a pole at the argument")]
    PoleHit,
    #[error("singular linear fractional map (zero determinant)")]
    SingularMap,
    #[error("zero has no digit")]
    ZeroInput,
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("integer height exceeded {0} bits")]
    HeightOverflow(u64),
    #[error("state relation violated at step {step}: {detail}")]
    StateViolation { step: usize, detail: String },
    #[error("{0} lies in the bifurcation set")]
    NotInMatchingInterval(String),
    #[error("undecided within a budget of {0} steps")]
    Undecided(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("internal disagreement: {0}")]
    InternalDisagreement(String),
    #[error("degenerate orbit: {0}")]
    DegenerateOrbit(String),
    #[error("insufficient resolution: {0}")]
    InsufficientResolution(String),
    #[error("invalid expansion: {0}")]
    InvalidExpansion(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("internal fault: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that signal a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::StateViolation { .. } | Error::InternalDisagreement(_) | Error::Internal(_)
        )
    }
}

impl Error {
    /// Stable name of the variant, used in machine-readable error bodies.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MixedField(..) => "MixedField",
            Error::DivisionByZero => "DivisionByZero",
            Error::PoleHit => "PoleHit",
            Error::SingularMap => "SingularMap",
            Error::ZeroInput => "ZeroInput",
            Error::Domain(_) => "Domain",
            Error::HeightOverflow(_) => "HeightOverflow",
            Error::StateViolation { .. } => "StateViolation",
            Error::NotInMatchingInterval(_) => "NotInMatchingInterval",
            Error::Undecided(_) => "Undecided",
            Error::PreconditionFailed(_) => "PreconditionFailed",
            Error::InternalDisagreement(_) => "InternalDisagreement",
            Error::DegenerateOrbit(_) => "DegenerateOrbit",
            Error::InsufficientResolution(_) => "InsufficientResolution",
            Error::InvalidExpansion(_) => "InvalidExpansion",
            Error::Parse(_) => "Parse",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
