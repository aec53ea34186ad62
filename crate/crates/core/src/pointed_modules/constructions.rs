use std::collections::BTreeSet;

use super::{Carrier, LeftModule, PointedSet};
use crate::absorption_monoid::{AbsMonoid, MonElement, SubMonoid};
use crate::error::{Error, Result};

fn componentwise(mods: Vec<LeftModule>, coproduct: bool) -> Result<LeftModule> {
    if mods.is_empty() {
        return Err(Error::TypeMismatch("empty family of modules".into()));
    }
    let all_mon = mods.iter().all(|m| m.carrier().is_mon());
    let all_set = mods.iter().all(|m| !m.carrier().is_mon());
    if !all_mon && !all_set {
        return Err(Error::TypeMismatch("mixed Set* and Mon* carriers".into()));
    }
    let scalar_factors: Vec<AbsMonoid> = mods.iter().map(|m| m.scalars().clone()).collect();
    let scalars = if coproduct {
        AbsMonoid::coproduct(scalar_factors)?
    } else {
        AbsMonoid::product(scalar_factors)?
    };
    let carrier = if all_mon {
        let factors: Vec<AbsMonoid> = mods.iter().map(|m| m.carrier().as_monoid().unwrap().clone()).collect();
        Carrier::Mon(if coproduct {
            AbsMonoid::coproduct(factors)?
        } else {
            AbsMonoid::product(factors)?
        })
    } else {
        Carrier::Set(PointedSet::product(mods.iter().map(|m| m.carrier().pointed_set()).collect()))
    };
    let (sc, ca) = (scalars.clone(), carrier.clone());
    let action = move |t: &MonElement, m: &MonElement| {
        let ts = sc.components(t).expect("product scalar");
        let ms = match &ca {
            Carrier::Mon(c) => c.components(m),
            Carrier::Set(c) => c.components(m),
        }
        .expect("product carrier element");
        let comps: Vec<MonElement> = mods
            .iter()
            .zip(ts.iter().zip(ms.iter()))
            .map(|(md, (ti, mi))| md.act_unchecked(ti, mi))
            .collect();
        match &ca {
            Carrier::Mon(c) => c.tuple(comps).expect("componentwise action stays in the product"),
            Carrier::Set(_) => PointedSet::tuple(comps),
        }
    };
    let kind = if coproduct { "coproduct" } else { "product" };
    let name = format!("{kind} module {} over {}", carrier.describe(), scalars.describe());
    Ok(LeftModule::new(scalars, carrier, action).named(name))
}

/// Product module: product of carriers over the product of scalar monoids,
/// acting componentwise.
pub fn module_product(mods: Vec<LeftModule>) -> Result<LeftModule> {
    componentwise(mods, false)
}

/// Coproduct module: finite-support tuples over the coproduct of scalars,
/// acting componentwise.
pub fn module_coproduct(mods: Vec<LeftModule>) -> Result<LeftModule> {
    componentwise(mods, true)
}

/// Smallest subset containing `gens` and `*` that is closed under the action
/// (and under multiplication for `Mon*` carriers), up to size `bound` on
/// infinite structures.
pub fn generated_submodule(module: &LeftModule, gens: &[MonElement], bound: usize) -> Result<BTreeSet<MonElement>> {
    let carrier = module.carrier();
    for g in gens {
        if !carrier.contains(g) {
            return Err(Error::foreign(carrier.label(g), carrier.describe()));
        }
    }
    let (scalars, _) = module.scalars().check_domain(bound);
    let limit = carrier.finite_bound().unwrap_or(bound);
    let mut set: BTreeSet<MonElement> = gens.iter().cloned().collect();
    set.insert(MonElement::Zero);
    let mut frontier: Vec<MonElement> = set.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        let mut fresh: Vec<MonElement> = scalars.iter().map(|(t, _)| module.act_unchecked(t, &x)).collect();
        if let Some(m) = carrier.as_monoid() {
            for y in set.iter() {
                fresh.push(m.mul(&x, y));
                fresh.push(m.mul(y, &x));
            }
        }
        for y in fresh {
            if carrier.size_of(&y) <= limit && set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    Ok(set)
}

/// Quotient of a module by a sub-module `N` with `T.N ⊆ N`.
///
/// For `Mon*` carriers `N` is the sub-monoid generated by `kill` and the
/// carrier becomes `M/N`; for `Set*` carriers `kill` must already be closed
/// under the action and is identified with `*`. In both cases the action on a
/// class is the class of the action on its representative.
pub fn module_quotient(module: &LeftModule, kill: Vec<MonElement>, bound: usize) -> Result<LeftModule> {
    let carrier = module.carrier().clone();
    let (scalars, _) = module.scalars().check_domain(bound);
    let members: BTreeSet<MonElement> = match &carrier {
        Carrier::Mon(m) => SubMonoid::generated_by(m, kill.clone())?.elements(m, bound),
        Carrier::Set(s) => {
            for k in &kill {
                if !s.contains(k) {
                    return Err(Error::foreign(s.label(k), s.describe()));
                }
            }
            let mut set: BTreeSet<MonElement> = kill.iter().cloned().collect();
            set.insert(MonElement::Zero);
            set
        }
    };
    let limit = carrier.finite_bound().unwrap_or(bound);
    for n in &members {
        for (t, _) in &scalars {
            let tn = module.act_unchecked(t, n);
            if carrier.size_of(&tn) <= limit && !members.contains(&tn) {
                return Err(Error::NotASubmodule(format!(
                    "{} . {} = {} leaves the sub-module",
                    module.scalars().label(t),
                    carrier.label(n),
                    carrier.label(&tn)
                )));
            }
        }
    }
    let quotient = match &carrier {
        Carrier::Mon(m) => Carrier::Mon(m.quotient(SubMonoid::generated_by(m, kill)?)?),
        Carrier::Set(s) => Carrier::Set(s.collapse(members)),
    };
    let (base, q) = (module.clone(), quotient.clone());
    let action = move |t: &MonElement, x: &MonElement| {
        let y = base.act_unchecked(t, x);
        match &q {
            Carrier::Mon(m) => m.class_of(&y).unwrap_or(MonElement::Zero),
            Carrier::Set(s) => s.class_of(&y),
        }
    };
    let name = format!("quotient of {}", module.name());
    Ok(LeftModule::new(module.scalars().clone(), quotient, action).named(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pointed_modules::find_module_isomorphism;
    use crate::FiniteAbsMonoid;

    fn z3() -> AbsMonoid {
        AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(3)).unwrap()
    }

    #[test]
    fn product_of_modules_satisfies_axioms() {
        let a = LeftModule::regular(&z3());
        let b = LeftModule::trivial_action(&AbsMonoid::two_element(), Carrier::Set(PointedSet::with_points(2)));
        let p = module_product(vec![a, b.clone()]).unwrap();
        let r = p.check_module_axioms(0);
        assert!(r.is_ok(), "{r}");
        let c = module_coproduct(vec![b.clone(), b]).unwrap();
        assert!(c.check_module_axioms(0).is_ok());
    }

    #[test]
    fn unary_product_is_a_copy() {
        let t = z3();
        let a = LeftModule::regular(&t);
        let p = module_product(vec![a.clone()]).unwrap();
        assert_eq!(p.carrier().elements().unwrap().len(), 4);
        assert!(p.check_module_axioms(0).is_ok());
        // Scalars differ as structures (a unary product), so compare through
        // the isomorphism T ≅ (T).
        let table = p.scalars().to_table().unwrap();
        assert!(table.is_isomorphic(t.as_table().unwrap()));
    }

    #[test]
    fn mon_product_of_trivial_actions() {
        let t = AbsMonoid::two_element();
        let m = LeftModule::trivial_action(&t, Carrier::Mon(z3()));
        assert!(m.check_module_axioms(0).is_ok());
        let p = module_product(vec![m.clone(), m]).unwrap();
        let r = p.check_module_axioms(0);
        assert!(r.is_ok(), "{r}");
    }

    #[test]
    fn quotient_by_zero_is_a_copy() {
        let t = z3();
        let m = LeftModule::regular(&t);
        let q = module_quotient(&m, vec![], 0).unwrap();
        assert!(find_module_isomorphism(&m, &q).is_some());
        let mm = LeftModule::trivial_action(&AbsMonoid::two_element(), Carrier::Mon(t));
        let qm = module_quotient(&mm, vec![], 0).unwrap();
        assert!(find_module_isomorphism(&mm, &qm).is_some());
    }

    #[test]
    fn non_submodule_is_rejected() {
        let free = AbsMonoid::free(&["a"]);
        let m = LeftModule::regular(&free);
        let err = module_quotient(&m, vec![free.parse("aa").unwrap()], 4).unwrap_err();
        assert!(matches!(err, Error::NotASubmodule(_)));
    }

    #[test]
    fn ideal_quotient_of_regular_action() {
        let t = z3();
        let m = LeftModule::regular(&t);
        let g = t.parse("g").unwrap();
        let n = generated_submodule(&m, &[g], 0).unwrap();
        // Z/3 is a group, so the left ideal of g is everything.
        assert_eq!(n.len(), 4);
        let q = module_quotient(&m, n.into_iter().collect(), 0).unwrap();
        assert_eq!(q.carrier().elements().unwrap(), vec![MonElement::Zero]);
        assert!(q.check_module_axioms(0).is_ok());
    }
}
