//! Exact-arithmetic combinatorics of set partitions and noncrossing partitions.
//!
//! The crate provides, over exact rational arithmetic throughout:
//!
//! * the lattices `Π_n` (all set partitions) and `NC_n` (noncrossing
//!   partitions): enumeration, refinement order, meet/join, Kreweras
//!   complementation and structural predicates ([`partitions`]);
//! * Möbius and zeta functions on both lattices, multiplicative functions
//!   given by characteristic sequences, and their convolution in the reduced
//!   incidence algebra ([`incidence`]);
//! * truncated formal power series and exact polynomial machinery:
//!   composition, compositional inverses, square roots, implicit solving,
//!   resultants and real-root isolation ([`series`]);
//! * moment–cumulant transforms over both lattices, the Leonov–Shiryaev
//!   product formula, crossing reduction and a formal engine for
//!   Brillinger-style "cumulants of cumulants" identities ([`cumulants`]);
//! * growth sequences and constants attached to the noncrossing lattice
//!   (large Schröder numbers and relatives), quartic singularity analysis,
//!   and exact symmetrization bounds of de Finetti type ([`bounds`]);
//! * batch verification suites behind the `noncrossing` CLI ([`verify`]).
//!
//! Every quantity that feeds a pass/fail decision is computed in
//! `BigRational`; floating point appears only in printed approximations.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability, and run `noncrossing verify --suite <name>` for the
//! machine-checked identity suites.

pub mod bounds;
pub mod cumulants;
pub mod incidence;
pub mod partitions;
pub mod rat;
pub mod series;
pub mod verify;

pub use partitions::{Family, IndexFunction, Partition};
pub use rat::Rat;

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter exceeded a documented enumeration or verification ceiling.
    #[error("size limit exceeded: {what} supports n <= {max}, got {n}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        max: usize,
    },
    /// An argument violated a structural precondition.
    #[error("domain error: {0}")]
    Domain(String),
    /// A characteristic sequence or series was too short for the request.
    #[error("order error: need order {need}, have {have}")]
    Order { need: usize, have: usize },
    /// A series operation could not be performed (branch, composition, ...).
    #[error("series error: {0}")]
    Series(String),
    /// An iterative solver failed to produce a valid solution.
    #[error("solver error: {0}")]
    Solver(String),
    /// A moment or cumulant value required by a transform was not supplied.
    #[error("missing data: {0}")]
    Missing(String),
    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
