use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rule {rule} is undefined for m = {m}: {reason}")]
    RuleUndefinedAtM { rule: String, m: usize, reason: String },

    #[error("invalid rule: {0}")]
    InvalidRule(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),

    #[error("unknown voter `{0}`")]
    UnknownVoter(String),

    #[error("invalid scheduling instance: {0}")]
    InvalidSchedule(String),

    #[error("jobs do not share the processing time {expected}: job `{job}` has {found}")]
    MixedProcessingTimes { expected: u64, job: String, found: u64 },

    #[error("instance too large: {what} is {size}, guard is {guard}")]
    InstanceTooLarge { what: &'static str, size: u128, guard: u128 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("rule mismatch: {0}")]
    RuleMismatch(String),

    #[error("no polynomial algorithm for {0}; enable exponential fallback to use the brute-force oracle")]
    NoPolynomialAlgorithm(String),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), message: message.into() }
    }
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::RuleUndefinedAtM { .. } => "rule_undefined_at_m",
            Error::InvalidRule(_) => "invalid_rule",
            Error::InvalidProfile(_) => "invalid_profile",
            Error::UnknownCandidate(_) => "unknown_candidate",
            Error::UnknownVoter(_) => "unknown_voter",
            Error::InvalidSchedule(_) => "invalid_schedule",
            Error::MixedProcessingTimes { .. } => "mixed_processing_times",
            Error::InstanceTooLarge { .. } => "instance_too_large",
            Error::PreconditionViolated(_) => "precondition_violated",
            Error::RuleMismatch(_) => "rule_mismatch",
            Error::NoPolynomialAlgorithm(_) => "no_polynomial_algorithm",
            Error::Parse { .. } => "parse",
        }
    }
}
