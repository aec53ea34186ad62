use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use ditrace_core::absorption_monoid::{
    all_submonoids, all_table_monoids, free_absorption_monoid, AbsMonoid, FiniteAbsMonoid, Law, MonElement,
    MonoidMorphism, SubMonoid,
};

fn tables_up_to(n: usize) -> Vec<FiniteAbsMonoid> {
    (2..=n).flat_map(all_table_monoids).collect()
}

/// Naive congruence closure on a finite table: repeat "x ~ y implies
/// cx ~ cy and xc ~ yc" on an explicit class array until stable.
fn congruence_classes(t: &FiniteAbsMonoid, kill: &BTreeSet<usize>) -> BTreeSet<BTreeSet<usize>> {
    let n = t.len();
    let mut class: Vec<usize> = (0..n).collect();
    let merge = |class: &mut Vec<usize>, a: usize, b: usize| {
        let (ca, cb) = (class[a], class[b]);
        if ca == cb {
            return false;
        }
        for c in class.iter_mut() {
            if *c == cb {
                *c = ca;
            }
        }
        true
    };
    for &k in kill {
        merge(&mut class, k, t.zero());
    }
    let mut changed = true;
    while changed {
        changed = false;
        for a in 0..n {
            for b in 0..n {
                if class[a] != class[b] {
                    continue;
                }
                for c in 0..n {
                    changed |= merge(&mut class, t.mul(c, a), t.mul(c, b));
                    changed |= merge(&mut class, t.mul(a, c), t.mul(b, c));
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (x, c) in class.into_iter().enumerate() {
        groups.entry(c).or_default().insert(x);
    }
    groups.into_values().collect()
}

#[test]
fn small_table_counts() {
    // {0,1} is the only absorption monoid on two elements; on three the
    // extra element squares to 0, 1 or itself.
    assert_eq!(all_table_monoids(2).len(), 1);
    assert_eq!(all_table_monoids(3).len(), 3);
}

#[test]
fn every_enumerated_table_is_lawful() {
    for t in tables_up_to(5) {
        let r = t.check_axioms();
        assert!(r.is_ok(), "{r}");
    }
}

#[test]
fn involution_table_passes() {
    let t = FiniteAbsMonoid::with_default_names(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]);
    let r = t.check_axioms();
    assert!(r.is_ok());
    assert_eq!(r.checked, 27 + 12);
}

#[test]
fn left_absorption_violation_cites_the_law() {
    let t = FiniteAbsMonoid::with_default_names(vec![vec![0, 0, 2], vec![0, 1, 2], vec![0, 2, 2]]);
    let r = t.check_axioms();
    assert!(r.violates(Law::LeftAbsorption));
    let v = r.violations.iter().find(|v| v.law == Law::LeftAbsorption).unwrap();
    assert_eq!(v.witnesses, vec!["0".to_string(), "e2".to_string()]);
}

#[test]
fn coproduct_of_two_and_three() {
    let two = AbsMonoid::two_element();
    let three = AbsMonoid::from_table(all_table_monoids(3)[0].clone()).unwrap();
    let c = AbsMonoid::coproduct(vec![two, three]).unwrap();
    // Finite index set: the carrier is the full product, 2 x 3 tuples.
    assert_eq!(c.elements().unwrap().len(), 6);
    assert!(c.to_table().unwrap().check_axioms().is_ok());
    let a = c.tuple(vec![MonElement::One, MonElement::Zero]).unwrap();
    let b = c.tuple(vec![MonElement::Zero, MonElement::One]).unwrap();
    assert!(c.mul(&a, &b).is_zero());
}

#[test]
fn product_of_three_element_tables() {
    for a in all_table_monoids(3) {
        for b in all_table_monoids(3) {
            let p = AbsMonoid::product(vec![AbsMonoid::from_table(a.clone()).unwrap(), AbsMonoid::from_table(b).unwrap()])
                .unwrap();
            let r = p.check_axioms_bounded(4);
            assert!(r.is_ok(), "{r}");
        }
    }
}

#[test]
fn free_word_count() {
    let m = free_absorption_monoid(&["*", "a", "b"], "*").unwrap();
    let nonzero = m.elements_up_to(3).into_iter().filter(|(x, _)| !x.is_zero()).count();
    assert_eq!(nonzero, 1 + 2 + 4 + 8);
}

#[test]
fn free_quotient_by_ab() {
    let m = AbsMonoid::free(&["a", "b"]);
    let ab = m.parse("ab").unwrap();
    let q = m.quotient(SubMonoid::generated_by(&m, vec![ab]).unwrap()).unwrap();
    assert!(q.class_of(&m.parse("aabb").unwrap()).unwrap().is_zero());
    let ba = m.parse("ba").unwrap();
    assert_eq!(q.class_of(&ba).unwrap(), ba);
    // Oracle: a word dies iff it contains "ab" as a factor.
    for (w, _) in m.elements_up_to(6) {
        if w.is_zero() || w.is_one() {
            continue;
        }
        let label = m.label(&w);
        assert_eq!(q.class_of(&w).unwrap().is_zero(), label.contains("ab"), "{label}");
    }
}

#[test]
fn quotient_matches_congruence_closure_on_all_small_tables() {
    for t in tables_up_to(5) {
        let m = AbsMonoid::from_table(t.clone()).unwrap();
        for sub in all_submonoids(&m).unwrap() {
            let kill: BTreeSet<usize> = sub
                .elements(&m, 8)
                .iter()
                .map(|x| AbsMonoid::table_index(&t, x).unwrap())
                .collect();
            let q = m.quotient(sub).unwrap();
            let mut got: BTreeMap<MonElement, BTreeSet<usize>> = BTreeMap::new();
            for i in 0..t.len() {
                got.entry(q.class_of(&AbsMonoid::table_handle(&t, i)).unwrap()).or_default().insert(i);
            }
            let got: BTreeSet<BTreeSet<usize>> = got.into_values().collect();
            assert_eq!(got, congruence_classes(&t, &kill), "{t:?} / {kill:?}");
        }
    }
}

#[test]
fn truncated_free_is_not_a_group() {
    assert!(!FiniteAbsMonoid::truncated_free(&["a"], 2).is_absorption_group());
    assert!(FiniteAbsMonoid::cyclic_group_with_zero(3).is_absorption_group());
}

#[test]
fn morphism_violation_names_the_pair() {
    let src = AbsMonoid::from_table(FiniteAbsMonoid::truncated_free(&["a"], 2)).unwrap();
    let tgt = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(3)).unwrap();
    let (a, aa) = (src.parse("a").unwrap(), src.parse("aa").unwrap());
    let g = tgt.parse("g").unwrap();
    let images = BTreeMap::from([
        (MonElement::Zero, MonElement::Zero),
        (MonElement::One, MonElement::One),
        (a, g.clone()),
        // g*g = g2, not g.
        (aa, g),
    ]);
    let r = MonoidMorphism::from_table(src, tgt, images).unwrap().check_morphism(4);
    let v = r.violations.iter().find(|v| v.law == Law::Multiplicative).unwrap();
    assert_eq!(v.witnesses, vec!["a".to_string(), "a".to_string()]);
}

fn table_strategy(max: usize) -> impl Strategy<Value = FiniteAbsMonoid> {
    let tables = tables_up_to(max);
    (0..tables.len()).prop_map(move |i| tables[i].clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_and_coproducts_are_lawful(a in table_strategy(4), b in table_strategy(3)) {
        let (a, b) = (AbsMonoid::from_table(a).unwrap(), AbsMonoid::from_table(b).unwrap());
        let p = AbsMonoid::product(vec![a.clone(), b.clone()]).unwrap();
        let r = p.check_axioms_bounded(4);
        prop_assert!(r.is_ok(), "{}", r);
        let c = AbsMonoid::coproduct(vec![a, b]).unwrap();
        let r = c.check_axioms_bounded(4);
        prop_assert!(r.is_ok(), "{}", r);
    }

    #[test]
    fn opposite_reverses(t in table_strategy(4)) {
        let m = AbsMonoid::from_table(t).unwrap();
        let op = m.opposite();
        let elems = m.elements().unwrap();
        for a in &elems {
            for b in &elems {
                prop_assert_eq!(op.mul(a, b), m.mul(b, a));
            }
        }
        prop_assert_eq!(op.opposite(), m);
    }

    #[test]
    fn identity_and_composition(t in table_strategy(4)) {
        let m = AbsMonoid::from_table(t).unwrap();
        let id = MonoidMorphism::identity(&m);
        prop_assert!(id.check_morphism(4).is_ok());
        prop_assert!(id.then(&id).unwrap().agrees_with(&id, 4));
    }

    #[test]
    fn isomorphism_is_found_after_relabelling(t in table_strategy(5), seed in any::<u64>()) {
        // Permute the non-zero, non-unit labels.
        let n = t.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (3..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, 2 + (s >> 33) as usize % (i - 1));
        }
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a]][perm[b]] = perm[t.mul(a, b)];
            }
        }
        let u = FiniteAbsMonoid::new(t.names().to_vec(), 0, 1, table);
        prop_assert!(t.is_isomorphic(&u));
    }
}
