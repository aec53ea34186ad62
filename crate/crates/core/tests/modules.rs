use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use ditrace_core::absorption_monoid::{all_table_monoids, AbsMonoid, FiniteAbsMonoid, Law, MonElement, MonoidMorphism};
use ditrace_core::scalar_functors::{restrict, ScalarChange};
use ditrace_core::pointed_modules::{
    find_module_isomorphism, generated_submodule, module_coproduct, module_from_transition_system, module_product,
    module_quotient, transition_system_from_module, Carrier, LeftModule, ModuleMorphism, MonoidAlgebraElement,
    PointedSet, TransitionSystem,
};

fn z2() -> AbsMonoid {
    AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(2)).unwrap()
}

fn tables(max: usize) -> Vec<AbsMonoid> {
    (2..=max).flat_map(all_table_monoids).map(|t| AbsMonoid::from_table(t).unwrap()).collect()
}

/// Module over Z/2 on {*, a, b} where g sends a and b to the given points.
fn z2_on_pair(ga: usize, gb: usize) -> Result<LeftModule, ditrace_core::Error> {
    let t = z2();
    let p = PointedSet::with_points(2);
    let pts: Vec<MonElement> = (0..3).map(PointedSet::point).collect();
    let g = t.parse("g").unwrap();
    let mut table = BTreeMap::new();
    for (i, m) in pts.iter().enumerate() {
        table.insert((MonElement::Zero, m.clone()), MonElement::Zero);
        table.insert((MonElement::One, m.clone()), m.clone());
        let img = match i {
            0 => 0,
            1 => ga,
            _ => gb,
        };
        table.insert((g.clone(), m.clone()), pts[img].clone());
    }
    LeftModule::from_table(t, Carrier::Set(p), table)
}

#[test]
fn regular_actions_are_modules() {
    for t in tables(4) {
        let r = LeftModule::regular(&t).check_module_axioms(4);
        assert!(r.is_ok(), "{r}");
    }
}

#[test]
fn trivial_action_over_two_element() {
    let t = AbsMonoid::two_element();
    let m = LeftModule::trivial_action(&t, Carrier::Set(PointedSet::with_points(3)));
    assert!(m.check_module_axioms(4).is_ok());
}

#[test]
fn planted_composition_violation() {
    // g.a = b and g.b = b, but g*g = 1 must fix a.
    let r = z2_on_pair(2, 2).unwrap().check_module_axioms(4);
    assert!(r.violates(Law::ActionComposition), "{r}");
    assert!(z2_on_pair(2, 1).unwrap().check_module_axioms(4).is_ok());
}

#[test]
fn single_product_and_zero_quotient_are_copies() {
    let m = z2_on_pair(2, 1).unwrap();
    let p = module_product(vec![m.clone()]).unwrap();
    // The product acts through 1-tuples of scalars; pull back along t -> (t).
    let (t, tp) = (m.scalars().clone(), p.scalars().clone());
    let wrap = tp.clone();
    let l = MonoidMorphism::from_fn(t, tp, move |x| wrap.tuple(vec![x.clone()]).unwrap());
    let pulled = restrict(&ScalarChange::new(l, 4).unwrap(), &p).unwrap();
    assert!(find_module_isomorphism(&m, &pulled).is_some());
    let q = module_quotient(&m, vec![], 4).unwrap();
    assert!(find_module_isomorphism(&m, &q).is_some());
}

#[test]
fn products_and_coproducts_of_modules() {
    let a = z2_on_pair(2, 1).unwrap();
    let b = LeftModule::trivial_action(&z2(), Carrier::Set(PointedSet::with_points(1)));
    let p = module_product(vec![a.clone(), b.clone()]).unwrap();
    assert!(p.check_module_axioms(4).is_ok());
    // {*, a, b} x {*, s}: 3 * 2 elements.
    assert_eq!(p.carrier().elements().unwrap().len(), 6);
    let c = module_coproduct(vec![a, b]).unwrap();
    assert!(c.check_module_axioms(4).is_ok());
}

#[test]
fn ideal_quotient_of_regular_action() {
    for t in tables(4) {
        let reg = LeftModule::regular(&t);
        for x in t.elements().unwrap() {
            let kill = generated_submodule(&reg, &[x.clone()], 4).unwrap();
            // Oracle: the orbit T.x, plus the basepoint.
            let mut orbit: BTreeSet<MonElement> = t.elements().unwrap().iter().map(|s| t.mul(s, &x)).collect();
            orbit.insert(MonElement::Zero);
            assert_eq!(kill, orbit);
            let q = module_quotient(&reg, kill.into_iter().collect(), 4).unwrap();
            let size = q.carrier().elements().unwrap().len();
            assert_eq!(size, t.elements().unwrap().len() - orbit.len() + 1);
            assert!(q.check_module_axioms(4).is_ok());
        }
    }
}

fn cycle() -> TransitionSystem {
    let mut ts = TransitionSystem::new(vec!["s0".into(), "s1".into()], vec!["a".into()]);
    ts.add(0, 0, 1).unwrap();
    ts.add(1, 0, 0).unwrap();
    ts
}

#[test]
fn two_state_cycle() {
    let m = module_from_transition_system(&cycle());
    let aa = m.scalars().parse("aa").unwrap();
    let s0 = m.carrier().parse("s0").unwrap();
    assert_eq!(m.act(&aa, &s0).unwrap(), s0);
    assert_eq!(transition_system_from_module(&m).unwrap(), cycle());
}

#[test]
fn dead_letter_has_no_transitions() {
    let mut ts = TransitionSystem::new(vec!["p".into(), "q".into()], vec!["a".into(), "b".into()]);
    ts.add(0, 0, 1).unwrap();
    let back = transition_system_from_module(&module_from_transition_system(&ts)).unwrap();
    assert!(back.transitions.keys().all(|&(_, l)| l == 0));
}

#[test]
fn algebra_examples() {
    let t = AbsMonoid::free(&["a", "b"]);
    let w = |s: &str| t.parse(s).unwrap();
    let x = MonoidAlgebraElement::from_terms(&t, [(w("a"), 2), (w("b"), 3)]).unwrap();
    let y = MonoidAlgebraElement::from_terms(&t, [(w("a"), 1), (w("b"), 1)]).unwrap();
    let xy = x.multiply(&y, &t).unwrap();
    let want = MonoidAlgebraElement::from_terms(&t, [(w("aa"), 2), (w("ab"), 2), (w("ba"), 3), (w("bb"), 3)]).unwrap();
    assert_eq!(xy, want);
    // A product landing on 0 is the empty sum.
    let n = AbsMonoid::from_table(FiniteAbsMonoid::truncated_free(&["a"], 1)).unwrap();
    let a = MonoidAlgebraElement::from_terms(&n, [(n.parse("a").unwrap(), 1)]).unwrap();
    assert!(a.multiply(&a, &n).unwrap().is_zero());
}

#[test]
fn identity_morphisms_compose() {
    let m = z2_on_pair(2, 1).unwrap();
    let id = ModuleMorphism::identity(&m);
    assert!(id.check(4).is_ok());
    assert!(id.then(&id).unwrap().agrees_with(&id, 4));
}

fn ts_strategy() -> impl Strategy<Value = TransitionSystem> {
    (1usize..=5, 1usize..=3).prop_flat_map(|(n, k)| {
        proptest::collection::vec(proptest::option::weighted(0.75, 0..n), n * k).prop_map(move |targets| {
            let states = (0..n).map(|i| format!("s{i}")).collect();
            let letters = (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
            let mut ts = TransitionSystem::new(states, letters);
            for (i, t) in targets.into_iter().enumerate() {
                if let Some(t) = t {
                    ts.add(i / k, i % k, t).unwrap();
                }
            }
            ts
        })
    })
}

fn algebra_strategy(t: &AbsMonoid) -> impl Strategy<Value = MonoidAlgebraElement> {
    let elems = t.elements().unwrap();
    let t = t.clone();
    proptest::collection::vec((0..elems.len(), -3i64..=3), 0..=3).prop_map(move |terms| {
        MonoidAlgebraElement::from_terms(&t, terms.into_iter().map(|(i, c)| (elems[i].clone(), c))).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn transition_module_is_a_module_and_round_trips(ts in ts_strategy()) {
        let m = module_from_transition_system(&ts);
        let r = m.check_module_axioms(4);
        prop_assert!(r.is_ok(), "{}", r);
        prop_assert_eq!(transition_system_from_module(&m).unwrap(), ts);
    }

    #[test]
    fn word_action_is_the_fold(ts in ts_strategy()) {
        let m = module_from_transition_system(&ts);
        for (w, _) in m.scalars().elements_up_to(4) {
            let Some(letters) = w.as_word() else { continue };
            for s in 0..ts.states.len() {
                // Rightmost letter first.
                let mut cur = Some(s);
                for &l in letters.iter().rev() {
                    cur = cur.and_then(|c| ts.transitions.get(&(c, l as usize)).copied());
                }
                let got = m.act(&w, &PointedSet::point(s + 1)).unwrap();
                let want = cur.map_or(MonElement::Zero, |c| PointedSet::point(c + 1));
                prop_assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn algebra_is_associative_and_distributive(
        (t, x, y, z) in (0..tables(4).len()).prop_flat_map(|i| {
            let t = tables(4)[i].clone();
            (Just(t.clone()), algebra_strategy(&t), algebra_strategy(&t), algebra_strategy(&t))
        })
    ) {
        let m = |a: &MonoidAlgebraElement, b: &MonoidAlgebraElement| a.multiply(b, &t).unwrap();
        prop_assert_eq!(m(&m(&x, &y), &z), m(&x, &m(&y, &z)));
        prop_assert_eq!(m(&x, &y.add(&z)), m(&x, &y).add(&m(&x, &z)));
        prop_assert_eq!(m(&y.add(&z), &x), m(&y, &x).add(&m(&z, &x)));
    }
}
