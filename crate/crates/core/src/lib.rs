//! Finite-field algebra for certifying recursive Kummer towers
//! `y^m = (x^m - α f(x) + α) / f(x)` as asymptotically good.
//!
//! The pipeline is: build a field ([`gf`]), describe a tower ([`tower`]),
//! compute the ramification closure S0 and certify it, then search and
//! deduplicate whole families of equations ([`search`]).

pub mod fixtures;
pub mod gf;
pub mod notation;
pub mod poly;
pub mod search;
pub mod serial;
pub mod tower;

pub use gf::{EmbeddingMap, FieldCtx, FieldDescriptor, FieldElement, GfError};
pub use poly::{DegreeBudget, Poly, PolyError, RootSet};
pub use tower::{
    certify, ClosureLimits, ClosureResult, ClosureStatus, EquivalenceKey, KummerSpec,
    RecursionSpec, TowerError, TowerReport,
};
