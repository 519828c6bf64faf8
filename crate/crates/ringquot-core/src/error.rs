//! Error type shared by the whole engine.
//!
//! Witness data is carried as pre-rendered strings so that errors stay cheap
//! to construct and deterministic to display; element rendering happens at the
//! site that owns the basis labels.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// All failure modes of the engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Incompatible matrix/vector shapes; the message names the operation.
    DimMismatch(String),
    /// Mixed scalars from different fields (or different primes).
    FieldMismatch,
    /// Modulus for GF(p) is not a prime in the supported range.
    BadModulus(u64),
    /// Structure constants fail associativity at basis triple `(i, j, k)`.
    NotAssociative { i: usize, j: usize, k: usize },
    /// Claimed unit fails a unit law against basis element `i`.
    UnitLaw { i: usize },
    /// A span offered as a subalgebra is not multiplicatively closed; the
    /// product of generators `i` and `j` escapes.
    NotClosed { i: usize, j: usize },
    /// A span offered as a subalgebra does not contain the identity.
    MissingIdentity,
    /// A map offered as a ring extension is not multiplicative at `(i, j)`.
    NotMultiplicative { i: usize, j: usize },
    /// A map offered as a ring extension does not send 1 to 1.
    NotUnital,
    /// Quiver has a directed cycle, so its path algebra is infinite-dimensional.
    CyclicQuiver,
    /// Relation data does not describe a partial order.
    BadPoset(String),
    /// A subspace offered as an ideal/submodule is not closed under the action.
    NotStable(String),
    /// Operation called with a left handle where a right one is needed, etc.
    SideMismatch(String),
    /// Input is valid mathematics the engine does not cover (e.g. an algebra
    /// that is not split over its base field).
    Unsupported(String),
    /// A documented precondition fails (e.g. Q1-Q4 for the theta map); the
    /// witness explains which one.
    Precondition(String),
    /// The Ore condition fails; the witness is a rendered pair.
    NotOre(String),
    /// A dimension or step budget was exceeded; partial work is discarded.
    Budget(String),
    /// Internal consistency check failed. Always a bug, never bad input.
    Engine(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimMismatch(what) => write!(f, "dimension mismatch: {what}"),
            Error::FieldMismatch => write!(f, "scalars come from different fields"),
            Error::BadModulus(p) => write!(f, "{p} is not a supported prime modulus"),
            Error::NotAssociative { i, j, k } => {
                write!(f, "structure constants violate associativity at (e{i}*e{j})*e{k}")
            }
            Error::UnitLaw { i } => write!(f, "claimed unit fails 1*e{i} = e{i} = e{i}*1"),
            Error::NotClosed { i, j } => {
                write!(f, "span is not multiplicatively closed: generator {i} * generator {j} escapes")
            }
            Error::MissingIdentity => write!(f, "span does not contain the identity"),
            Error::NotMultiplicative { i, j } => {
                write!(f, "map is not multiplicative at basis pair ({i}, {j})")
            }
            Error::NotUnital => write!(f, "map does not send 1 to 1"),
            Error::CyclicQuiver => write!(f, "quiver has a directed cycle"),
            Error::BadPoset(w) => write!(f, "relations do not form a partial order: {w}"),
            Error::NotStable(w) => write!(f, "subspace is not action-stable: {w}"),
            Error::SideMismatch(w) => write!(f, "side mismatch: {w}"),
            Error::Unsupported(w) => write!(f, "unsupported configuration: {w}"),
            Error::Precondition(w) => write!(f, "precondition failed: {w}"),
            Error::NotOre(w) => write!(f, "Ore condition fails: {w}"),
            Error::Budget(w) => write!(f, "budget exceeded: {w}"),
            Error::Engine(w) => write!(f, "internal error: {w}"),
        }
    }
}
