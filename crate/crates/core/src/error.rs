use thiserror::Error;

use crate::support::Support;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("at most 16 colors are supported, got {0}")]
    TooManyColors(usize),
    #[error("facets {first} and {second} have the same full-support key")]
    DuplicateFacet { first: usize, second: usize },
    #[error("key function returned a key of the wrong support for facet {facet} at {support}")]
    KeySupportMismatch { facet: usize, support: Support },
    #[error("facet order is not a permutation of the facet indices")]
    NotAPermutation,
    #[error("assignment has {got} entries for {expected} facets")]
    AssignmentLength { expected: usize, got: usize },
    #[error("cell not found in the complex")]
    CellNotFound,
    #[error("boundary of a boundary is nonzero in dimension {dim}; the key function is inconsistent")]
    BoundarySquareNonzero { dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("malformed chain: {0}")]
    MalformedChain(String),
    #[error("invalid orbit representative: {0}")]
    InvalidRepresentative(String),
    #[error("size {got} exceeds the configured cap {cap}")]
    CapExceeded { got: usize, cap: usize },
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("assignment is not a partitioning: {0}")]
    NotAPartitioning(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("group order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("generator has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("generator is not a permutation")]
    NotAPermutation,
    #[error("{count} monomials exceed the enumeration guard {cap}")]
    TooManyMonomials { count: u128, cap: u128 },
    #[error("divisor has a non-unit constant term")]
    NonUnitDivisor,
}
