use super::ScalarChange;
use crate::absorption_monoid::MonoidMorphism;
use crate::error::{Error, Result};
use crate::pointed_modules::{Bimodule, LeftModule, ModuleMorphism, RightModule};

/// `l*`: the same carrier with `t.m = l(t).m`.
pub fn restrict(l: &ScalarChange, module: &LeftModule) -> Result<LeftModule> {
    if module.scalars() != l.target() {
        return Err(Error::ScalarMismatch {
            expected: l.target().describe(),
            found: module.scalars().describe(),
        });
    }
    let (lm, action) = (l.clone(), module.action().clone());
    Ok(
        LeftModule::new(l.source().clone(), module.carrier().clone(), move |t, m| action(&lm.apply(t), m))
            .named(format!("restriction of {}", module.name())),
    )
}

/// Right-module restriction: `m.t = m.l(t)`.
pub fn restrict_right(l: &ScalarChange, module: &RightModule) -> Result<RightModule> {
    if module.scalars() != *l.target() {
        return Err(Error::ScalarMismatch {
            expected: l.target().describe(),
            found: module.scalars().describe(),
        });
    }
    let (lm, inner) = (l.clone(), module.clone());
    Ok(RightModule::new(l.source().clone(), module.carrier().clone(), move |m, t| {
        inner.act_unchecked(m, &lm.apply(t))
    }))
}

/// Restrict both sides of a bimodule, along `left` and `right` respectively.
pub fn restrict_bimodule(left: &ScalarChange, right: &ScalarChange, module: &Bimodule) -> Result<Bimodule> {
    Bimodule::new(restrict(left, &module.left)?, restrict_right(right, &module.right)?)
}

/// `l*(f)`: the same carrier map between the restricted modules.
pub fn restrict_morphism(l: &ScalarChange, f: &ModuleMorphism) -> Result<ModuleMorphism> {
    let (src, tgt) = (restrict(l, f.source())?, restrict(l, f.target())?);
    let f = f.clone();
    ModuleMorphism::new(src, tgt, move |x| f.apply(x), MonoidMorphism::identity(l.source()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorption_monoid::{AbsMonoid, FiniteAbsMonoid, MonElement};
    use std::collections::BTreeMap;

    fn z3() -> AbsMonoid {
        AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(3)).unwrap()
    }

    #[test]
    fn identity_restriction_keeps_the_action() {
        let t = z3();
        let m = LeftModule::regular(&t);
        let r = restrict(&ScalarChange::identity(&t), &m).unwrap();
        for a in t.elements().unwrap() {
            for b in t.elements().unwrap() {
                assert_eq!(r.act_unchecked(&a, &b), m.act_unchecked(&a, &b));
            }
        }
    }

    #[test]
    fn restriction_along_unit_inclusion() {
        let t = z3();
        let inc = MonoidMorphism::from_table(
            AbsMonoid::two_element(),
            t.clone(),
            BTreeMap::from([(MonElement::Zero, MonElement::Zero), (MonElement::One, MonElement::One)]),
        )
        .unwrap();
        let l = ScalarChange::new(inc, 4).unwrap();
        let r = restrict(&l, &LeftModule::regular(&t)).unwrap();
        assert!(r.check_module_axioms(4).is_ok());
        assert_eq!(r.scalars(), &AbsMonoid::two_element());
    }

    #[test]
    fn scalar_mismatch() {
        let l = ScalarChange::identity(&z3());
        let m = LeftModule::regular(&AbsMonoid::two_element());
        assert!(matches!(restrict(&l, &m), Err(Error::ScalarMismatch { .. })));
    }
}
