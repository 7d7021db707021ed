use thiserror::Error;

/// Errors raised by constructors, parsers and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("ring axiom violated: {0}")]
    AxiomViolation(String),

    #[error("ring of order {order} exceeds the cap of {cap} elements")]
    CapExceeded { order: usize, cap: usize },

    #[error("ideal or homomorphism lives over a different ring")]
    RingMismatch,

    #[error("ideal and family live in different universes: {0}")]
    UniverseMismatch(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("not a multiplicatively closed set: {0}")]
    NotMultiplicative(String),

    #[error("precondition violated: {reason}")]
    Precondition { reason: String, covering_prime: Option<String> },

    #[error("ideal is not covered by the family")]
    NotCovered,

    #[error("family members are comparable: {0} and {1}")]
    Comparable(String, String),

    #[error("ring is not reduced")]
    NotReduced,

    #[error("coefficient field mismatch: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: expected at most {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("the zero ideal is not allowed here")]
    ZeroIdeal,

    #[error("real quadratic orders are not supported (d = {0})")]
    RealQuadratic(i64),

    #[error("norm {0} exceeds the trial-division cap")]
    NormTooLarge(u128),

    #[error("hypothesis violated: V[x] is covered by place {index} ({place})")]
    HypothesisViolated { index: usize, place: String },

    #[error("duplicate place in constraint table: {0}")]
    DuplicatePlace(String),

    #[error("family lists {0} twice")]
    DuplicateMember(String),

    #[error("internal validation failure: {0}")]
    Validation(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
