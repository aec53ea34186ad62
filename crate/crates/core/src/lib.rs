//! Absorption monoids (monoids with zero), modules over them in pointed sets
//! and pointed monoids, the restriction / extension / co-extension of scalars
//! functors, and the first directed homotopy module of combinatorial directed
//! spaces (2D grids with forbidden cells and directed graphs).
//!
//! Everything here works on canonical element handles ([`MonElement`]): two
//! elements of the same structure are equal iff their handles are equal.
//! Infinite structures (free monoids, path monoids, extension monoids) are
//! evaluable rather than materialized; checks over them are bounded by a
//! size bound `L` and say so in their reports.

pub mod absorption_monoid;
pub mod corpus;
pub mod directed_space;
pub mod error;
pub mod format;
pub mod pointed_modules;
pub mod scalar_functors;

pub use absorption_monoid::{
    AbsMonoid, AxiomReport, FiniteAbsMonoid, Law, MonElement, MonoidMorphism, SubMonoid, Violation,
};
pub use error::{Error, Result};

/// Default size bound for checks over infinite structures.
pub const DEFAULT_BOUND: usize = 6;
/// Default rewrite budget for extension-word normalization.
pub const DEFAULT_BUDGET: usize = 10_000;
/// Tolerance used for the simplex sum invariant and simplicial identities.
pub const SIMPLEX_TOLERANCE: f64 = 1e-12;
