//! Combinatorial directed spaces (grids with forbidden cells, directed
//! graphs), their trace monoids, dihomotopy classes of d-paths, the
//! fundamental dihomotopy module, the induced functors, and the face and
//! degeneracy maps of standard simplices.

mod classes;
mod functor;
mod pi1;
mod simplex;
mod space;

pub use classes::{dihomotopy_classes, dihomotopy_classes_flood, enumerate_dipaths, swap_allowed, DihomotopyClass};
pub use functor::{pi1_map, trace_monoid_map, DMap, SpaceMap};
pub use pi1::{path_bimodule, trace_monoid, Pi1Carrier, Pi1Module};
pub use simplex::{check_simplicial_identities, degeneracy_map, face_map, IdentityCheck, IdentityFamily, SimplexPoint};
pub use space::{DirectedGraph, Edge, GridSpace, Space, STEP_R, STEP_U};
