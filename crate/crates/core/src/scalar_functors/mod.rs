//! Change of scalars along a morphism `l: T -> T'`: restriction `l*`,
//! extension `l_!` (pointed-set and monoid carriers) and co-extension `l_*`,
//! with exhaustive adjunction checks on finite instances.

mod adjunction;
mod coextend;
mod extend_mon;
mod extend_set;
mod group;
mod hom;
mod restrict;

pub use adjunction::{adjunction_left_check, adjunction_right_check, AdjunctionReport, Side};
pub use coextend::{coextend, coextend_map, Coextension};
pub use extend_mon::{extend_mon, extend_mon_map, Equality, ExtensionMonoid, MonExtension};
pub use extend_set::{extend_set, extend_set_map, SetExtension};
pub use group::{group_preservation_check, GroupReport};
pub use hom::module_homs;
pub use restrict::{restrict, restrict_bimodule, restrict_morphism, restrict_right};

use crate::absorption_monoid::{AbsMonoid, MonElement, MonoidMorphism};
use crate::error::{Error, Result};

/// A checked morphism of absorption monoids `l: T -> T'`.
#[derive(Clone, Debug)]
pub struct ScalarChange {
    l: MonoidMorphism,
}

impl ScalarChange {
    /// Wrap `l` after verifying the morphism laws (exhaustively when `T` is
    /// small and finite, otherwise up to `bound`).
    pub fn new(l: MonoidMorphism, bound: usize) -> Result<Self> {
        let report = l.check_morphism(bound);
        if !report.is_ok() {
            return Err(Error::NotAMorphism(report.to_string()));
        }
        Ok(ScalarChange { l })
    }

    pub fn identity(t: &AbsMonoid) -> Self {
        ScalarChange {
            l: MonoidMorphism::identity(t),
        }
    }

    /// `T`.
    pub fn source(&self) -> &AbsMonoid {
        self.l.source()
    }

    /// `T'`.
    pub fn target(&self) -> &AbsMonoid {
        self.l.target()
    }

    pub fn morphism(&self) -> &MonoidMorphism {
        &self.l
    }

    pub fn apply(&self, t: &MonElement) -> MonElement {
        self.l.apply_unchecked(t)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &ScalarChange) -> Result<ScalarChange> {
        Ok(ScalarChange { l: self.l.then(&next.l)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorption_monoid::FiniteAbsMonoid;
    use std::collections::BTreeMap;

    #[test]
    fn rejects_non_morphisms() {
        let t = AbsMonoid::two_element();
        let z2 = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(2)).unwrap();
        // 1 -> g does not preserve the unit.
        let images = BTreeMap::from([
            (MonElement::Zero, MonElement::Zero),
            (MonElement::One, MonElement::letter(2)),
        ]);
        let l = MonoidMorphism::from_table(t, z2, images).unwrap();
        assert!(matches!(ScalarChange::new(l, 4), Err(Error::NotAMorphism(_))));
    }
}
