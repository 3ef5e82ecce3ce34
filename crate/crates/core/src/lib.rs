//! Quotient cell complexes `Δ(B_kn)/S_k≀S_n` and `Δ(Π_n)/S_n`.
//!
//! The crate models pure balanced boolean cell complexes as facets plus a
//! canonical face-key function ([`complex`]), builds the two families of
//! quotient complexes on top of it ([`wreath`], [`partition`]), and
//! computes their invariants: flag f/h-vectors, shelling and partitioning
//! certificates, GF(2) Betti numbers and Hilbert series ([`series`]).

pub mod certificate;
pub mod complex;
pub mod error;
pub mod partition;
pub mod perm;
pub mod series;
pub mod support;
pub mod wreath;

pub use complex::{
    build_complex, BalancedComplex, CellKey, FlagVector, PartitionAssignment, SearchOutcome,
    ShellingCertificate,
};
pub use error::{BuildError, ComplexError, SeriesError};
pub use series::{PermGroup, TruncatedSeries};
pub use support::{Color, Support};

/// Version string recorded in certificates.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
