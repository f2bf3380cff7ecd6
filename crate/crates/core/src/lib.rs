//! Exact commutative algebra in prime characteristic.
//!
//! The crate computes, over standard-graded quotients of polynomial rings
//! `F_p[x_1..x_n]`:
//!
//! * reduced Gröbner bases, normal forms, bracket (Frobenius) powers, ideal
//!   colons and saturations ([`groebner`]);
//! * Hilbert series, Krull dimensions, multiplicities, vector-space lengths
//!   of Artinian quotients, and localized lengths ([`hilbert`]);
//! * Hilbert–Kunz length series and multiplicity estimates, with empirical
//!   checks of the uniform bounds those lengths satisfy ([`hk`]);
//! * Frobenius splitting numbers and F-signature estimates ([`fsplit`]);
//! * multi-locus sweeps that test semicontinuity and uniform-convergence
//!   behaviour of the above ([`probe`]).
//!
//! Everything is exact: field arithmetic is integer arithmetic mod `p`,
//! series data are integers, and normalized values are rationals. Floating
//! point appears only in final report summaries (fitted slopes, estimates).

pub mod error;
pub mod fsplit;
pub mod groebner;
pub mod hilbert;
pub mod hk;
pub mod polyring;
pub mod probe;

pub use error::{Error, ErrorClass, Result};
pub use fsplit::{FSigEstimate, ParameterChainSpec, SplittingEntry, SplittingSeries};
pub use groebner::IdealHandle;
pub use hilbert::HilbertData;
pub use hk::{BoundFit, BoundWitness, DoubleIndexFit, EhkEstimate, HkEntry, HkSeries};
pub use polyring::{
    Monomial, MonomialOrder, PolyRing, Polynomial, PrimeCharField, RingPresentation,
    MAX_EXPONENT,
};
pub use probe::{
    ConvergenceReport, FamilyMember, Locus, LocusReport, NormalizedSeries, OrderCheck,
    ProbeOutcome, SemicontinuityReport,
};
