//! Modules over absorption monoids with pointed-set (`Set*`) or
//! absorption-monoid (`Mon*`) carriers: axiom checks, morphisms, products,
//! coproducts and quotients, transition systems, and the contracted monoid
//! algebra.

mod algebra;
mod carrier;
mod constructions;
mod module;
mod morphism;
mod transition;

pub use algebra::MonoidAlgebraElement;
pub use carrier::{LazyCarrier, PointedSet};
pub use constructions::{generated_submodule, module_coproduct, module_product, module_quotient};
pub use module::{find_module_isomorphism, ActionFn, Bimodule, Carrier, LeftModule, RightModule};
pub use morphism::ModuleMorphism;
pub use transition::{module_from_transition_system, transition_system_from_module, TransitionSystem};
