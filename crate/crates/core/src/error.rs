//! Shared error type for the algebra kernel.
//!
//! Errors fall into three classes, and callers (notably the CLI) rely on the
//! classification:
//!
//! * [`ErrorClass::Input`] — the caller handed us something malformed or
//!   mathematically out of scope (bad syntax, composite characteristic,
//!   a quotient that is not finite length, ...).
//! * [`ErrorClass::ResourceLimit`] — the computation was abandoned because it
//!   hit a configured work budget.
//! * [`ErrorClass::Internal`] — an invariant the library itself guarantees was
//!   observed to fail; always a bug, never the caller's fault.

use std::fmt;

/// Broad classification of an [`Error`], used to pick process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Input,
    ResourceLimit,
    Internal,
}

/// Every failure the kernel can report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Syntax error while parsing a polynomial; `pos` is a byte offset.
    Parse { pos: usize, msg: String },
    /// An identifier in the input is not a variable of the ambient ring.
    UnknownVariable { pos: usize, name: String },
    /// A per-variable exponent exceeded [`crate::polyring::MAX_EXPONENT`].
    ExponentOverflow { detail: String },
    /// The requested characteristic is not a prime in `2..2^16`.
    NotPrime { p: u64 },
    /// Two polynomials from different ambient rings were combined.
    AmbientMismatch { detail: String },
    /// A Frobenius/bracket power was requested at `q` not a power of `p`.
    NotPowerOfChar { q: u64, p: u64 },
    /// Division or colon by the zero polynomial.
    ZeroArgument { detail: String },
    /// An operation that requires homogeneous input got an inhomogeneous one.
    NotHomogeneous { detail: String },
    /// A length was requested for a quotient that is not finite-dimensional.
    NotFiniteLength { detail: String },
    /// The two sides of a localized length had different Krull dimensions.
    DimensionMismatch { detail: String },
    /// The heuristic `radical(I) ⊆ P` membership test failed.
    RadicalCheckFailed { detail: String },
    /// A localized length came out non-integral: a precondition was violated.
    NonIntegerRatio { num: u64, den: u64, detail: String },
    /// A declared ideal containment `I ⊆ J` does not hold.
    ContainmentFailed { detail: String },
    /// The socle of an Artinian quotient is not 1-dimensional.
    SocleNotSimple { dim: usize, detail: String },
    /// Splitting numbers did not stabilize within the configured `t_max`.
    NotStabilized { t_max: u32, last: (u64, u64) },
    /// A numeric fit was requested on degenerate data (e.g. repeated `q`).
    DegenerateFit { detail: String },
    /// Fewer data points than the requested operation needs.
    InsufficientData { detail: String },
    /// Malformed job-level configuration (bad locus, empty sop, ...).
    InvalidConfig { detail: String },
    /// The Buchberger pair budget was exhausted.
    WorkLimitExceeded { processed: u64, budget: u64 },
    /// An internal invariant failed; always a bug in this library.
    Internal { detail: String },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::WorkLimitExceeded { .. } => ErrorClass::ResourceLimit,
            Error::Internal { .. } => ErrorClass::Internal,
            _ => ErrorClass::Input,
        }
    }

    /// True for failures that mean "ran out of budget", which series
    /// builders downgrade to a truncated-but-valid result.
    pub fn is_resource_limit(&self) -> bool {
        self.class() == ErrorClass::ResourceLimit
    }

    /// Shorthand used by invariant tripwires throughout the kernel.
    pub fn internal(detail: impl Into<String>) -> Self {
        Error::Internal { detail: detail.into() }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            Error::UnknownVariable { pos, name } => {
                write!(f, "unknown variable `{name}` at byte {pos}")
            }
            Error::ExponentOverflow { detail } => write!(f, "exponent overflow: {detail}"),
            Error::NotPrime { p } => write!(f, "{p} is not a prime below 2^16"),
            Error::AmbientMismatch { detail } => write!(f, "ambient ring mismatch: {detail}"),
            Error::NotPowerOfChar { q, p } => {
                write!(f, "q = {q} is not a power of the characteristic {p}")
            }
            Error::ZeroArgument { detail } => write!(f, "zero argument: {detail}"),
            Error::NotHomogeneous { detail } => write!(f, "not homogeneous: {detail}"),
            Error::NotFiniteLength { detail } => write!(f, "not finite length: {detail}"),
            Error::DimensionMismatch { detail } => write!(f, "dimension mismatch: {detail}"),
            Error::RadicalCheckFailed { detail } => write!(f, "radical check failed: {detail}"),
            Error::NonIntegerRatio { num, den, detail } => {
                write!(f, "degree ratio {num}/{den} is not an integer: {detail}")
            }
            Error::ContainmentFailed { detail } => write!(f, "containment failed: {detail}"),
            Error::SocleNotSimple { dim, detail } => {
                write!(f, "socle is {dim}-dimensional, expected 1: {detail}")
            }
            Error::NotStabilized { t_max, last } => write!(
                f,
                "splitting numbers did not stabilize by t = {t_max} (last values {} and {})",
                last.0, last.1
            ),
            Error::DegenerateFit { detail } => write!(f, "degenerate fit: {detail}"),
            Error::InsufficientData { detail } => write!(f, "insufficient data: {detail}"),
            Error::InvalidConfig { detail } => write!(f, "invalid configuration: {detail}"),
            Error::WorkLimitExceeded { processed, budget } => write!(
                f,
                "work limit exceeded: processed {processed} S-pairs against a budget of {budget}"
            ),
            Error::Internal { detail } => write!(f, "internal invariant violated: {detail}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
