use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("coweight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("group enumeration exceeded cap {0}")]
    GroupTooLarge(usize),
    #[error("v({0})_{1} is not derivable from the known relations")]
    NotDerivable(i64, i64),
    #[error("degenerate system: {0}")]
    Degenerate(String),
    #[error("denominator {0} does not divide a power of the wall product")]
    NonWallDenominator(String),
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("monomial order mismatch: {0}")]
    OrderMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not W-invariant: {0}")]
    NotInvariant(String),
    #[error("element is not in the ring: {0}")]
    NotMember(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Resource and parse failures are input-level problems; the rest are semantic.
    pub fn is_resource_or_parse(&self) -> bool {
        matches!(self, Error::ResourceLimit(_) | Error::Parse(_) | Error::GroupTooLarge(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
