//! Absorption monoids: element handles, finite tables, the monoid kinds and
//! constructions (product, coproduct, quotient, free), and morphisms.

mod element;
mod monoid;
mod morphism;
mod report;
mod submonoid;
mod table;

pub use element::MonElement;
pub(crate) use element::split_top_level;
pub use monoid::{free_absorption_monoid, AbsMonoid, FreeAlphabet, LazyMonoid, MonoidKind};
pub use morphism::MonoidMorphism;
pub use report::{AxiomReport, Law, Violation};
pub use submonoid::{all_submonoids, SubMonoid};
pub use table::{all_table_monoids, FiniteAbsMonoid};
