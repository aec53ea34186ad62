use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use ditrace_core::absorption_monoid::MonElement;
use ditrace_core::corpus;
use ditrace_core::directed_space::{
    degeneracy_map, dihomotopy_classes, dihomotopy_classes_flood, enumerate_dipaths, face_map, path_bimodule, pi1_map,
    trace_monoid, trace_monoid_map, DMap, GridSpace, Pi1Module, SimplexPoint, Space, SpaceMap, STEP_R, STEP_U,
};
use ditrace_core::format::{parse_dmap, parse_space};

fn grid(w: u32, h: u32, holes: &[(u32, u32)]) -> GridSpace {
    GridSpace::new(w, h).unwrap().with_forbidden(holes).unwrap()
}

fn handle(g: &GridSpace, start: (u32, u32), steps: &[u32]) -> MonElement {
    let mut w = vec![g.vertex(start.0, start.1)];
    w.extend_from_slice(steps);
    MonElement::Word(w)
}

/// All (start, steps) pairs with at most `len` steps, by walking coordinates.
fn lattice_paths(g: &GridSpace, len: usize) -> Vec<((u32, u32), Vec<u32>)> {
    fn walk(g: &GridSpace, at: (u32, u32), left: usize, word: &mut Vec<u32>, start: (u32, u32), out: &mut Vec<((u32, u32), Vec<u32>)>) {
        out.push((start, word.clone()));
        if left == 0 {
            return;
        }
        if at.0 < g.width {
            word.push(STEP_R);
            walk(g, (at.0 + 1, at.1), left - 1, word, start, out);
            word.pop();
        }
        if at.1 < g.height {
            word.push(STEP_U);
            walk(g, (at.0, at.1 + 1), left - 1, word, start, out);
            word.pop();
        }
    }
    let mut out = Vec::new();
    for x in 0..=g.width {
        for y in 0..=g.height {
            walk(g, (x, y), len, &mut Vec::new(), (x, y), &mut out);
        }
    }
    out
}

fn end(start: (u32, u32), steps: &[u32]) -> (u32, u32) {
    let r = steps.iter().filter(|&&s| s == STEP_R).count() as u32;
    (start.0 + r, start.1 + steps.len() as u32 - r)
}

/// Class count by brute force: for every pair of paths, look for a single
/// allowed swap, then take connected components by repeated relabelling.
fn oracle_class_count(g: &GridSpace, a: (u32, u32), b: (u32, u32)) -> usize {
    let paths: Vec<Vec<u32>> = enumerate_dipaths(g, a, b);
    let mut label: Vec<usize> = (0..paths.len()).collect();
    let adjacent = |p: &[u32], q: &[u32]| {
        let diff: Vec<usize> = (0..p.len()).filter(|&i| p[i] != q[i]).collect();
        diff.len() == 2 && diff[1] == diff[0] + 1 && {
            let corner = end(a, &p[..diff[0]]);
            !g.forbidden.contains(&corner)
        }
    };
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..paths.len() {
            for j in 0..paths.len() {
                if label[i] != label[j] && adjacent(&paths[i], &paths[j]) {
                    let m = label[i].min(label[j]);
                    let old = label[i].max(label[j]);
                    label.iter_mut().filter(|x| **x == old).for_each(|x| *x = m);
                    changed = true;
                }
            }
        }
    }
    label.into_iter().collect::<BTreeSet<_>>().len()
}

#[test]
fn unit_square_has_ten_traces() {
    let g = grid(1, 1, &[]);
    let t = trace_monoid(&Space::Grid(g.clone()));
    let found: Vec<MonElement> = t
        .elements_up_to(2)
        .into_iter()
        .map(|(x, _)| x)
        .filter(|x| !x.is_zero() && !x.is_one())
        .collect();
    assert_eq!(found.len(), lattice_paths(&g, 2).len());
    assert_eq!(found.len(), 10);
}

#[test]
fn path_counts_are_binomial() {
    let g = grid(3, 3, &[]);
    assert_eq!(enumerate_dipaths(&g, (0, 0), (3, 3)).len(), 20);
    assert_eq!(enumerate_dipaths(&g, (0, 0), (2, 1)).len(), 3);
    assert_eq!(enumerate_dipaths(&g, (1, 1), (1, 1)), vec![Vec::<u32>::new()]);
    assert!(enumerate_dipaths(&g, (2, 0), (1, 3)).is_empty());
}

#[test]
fn corpus_grids_against_oracle() {
    for (name, expected) in [("empty3.grid", Some(1)), ("hole3.grid", Some(2)), ("swiss5.grid", None)] {
        let Space::Grid(g) = parse_space(corpus::file(name).unwrap()).unwrap() else { panic!() };
        let (w, h) = (g.width, g.height);
        let oracle = oracle_class_count(&g, (0, 0), (w, h));
        if let Some(n) = expected {
            assert_eq!(oracle, n, "{name}");
        }
        let uf = dihomotopy_classes(&g, (0, 0), (w, h));
        let flood = dihomotopy_classes_flood(&g, (0, 0), (w, h));
        assert_eq!(uf.len(), oracle, "{name}");
        assert_eq!(uf, flood, "{name}");
        for c in &uf {
            assert_eq!(c.representative, c.members[0]);
        }
    }
}

#[test]
fn hole_classes_pass_below_and_above() {
    let g = grid(3, 3, &[(1, 1)]);
    let classes = dihomotopy_classes(&g, (0, 0), (3, 3));
    let reps: Vec<&[u32]> = classes.iter().map(|c| c.representative.as_slice()).collect();
    // RRRUUU goes below the hole; UUURRR is in the other class.
    let below = classes.iter().find(|c| c.members.contains(&vec![0, 0, 0, 1, 1, 1])).unwrap();
    assert!(!below.members.contains(&vec![1, 1, 1, 0, 0, 0]));
    assert_eq!(reps.len(), 2);
}

#[test]
fn prefixing_is_consistent_across_representatives() {
    let g = grid(3, 3, &[(1, 1)]);
    let pi = Pi1Module::new(&Space::Grid(g.clone()));
    let up = handle(&g, (0, 0), &[STEP_U]);
    let targets: BTreeSet<MonElement> = pi.classes().classes(g.vertex(0, 0), g.vertex(3, 3)).into_iter().collect();
    for c in dihomotopy_classes(&g, (0, 1), (3, 3)) {
        let images: BTreeSet<MonElement> = c
            .members
            .iter()
            .map(|m| {
                let mut w = vec![STEP_U];
                w.extend_from_slice(m);
                pi.classes().class_of(&handle(&g, (0, 0), &w))
            })
            .collect();
        assert_eq!(images.len(), 1);
        let image = images.into_iter().next().unwrap();
        assert!(targets.contains(&image));
        let class = handle(&g, (0, 1), &c.representative);
        assert_eq!(pi.left().act(&up, &class).unwrap(), image);
    }
    assert_eq!(pi.check_representative_independence(6, 2).map(|n| n > 0), Ok(true));
}

#[test]
fn graph_classes_are_paths() {
    let space = parse_space(corpus::file("diamond.graph").unwrap()).unwrap();
    let pi = Pi1Module::new(&space);
    let a = space.parse_vertex("a").unwrap();
    let d = space.parse_vertex("d").unwrap();
    assert_eq!(pi.classes().classes(a, d).len(), 2);
    assert_eq!(pi.act("a:ab", "b:bd").unwrap(), pi.parse_class("a:ab.bd").unwrap());
    assert!(pi.act("a:ac", "b:bd").unwrap().is_zero());
}

#[test]
fn concatenation_action_is_associative_on_small_grid() {
    let g = grid(2, 2, &[]);
    let space = Space::Grid(g.clone());
    let t = trace_monoid(&space);
    let bm = path_bimodule(&space);
    let paths: Vec<MonElement> = lattice_paths(&g, 4).into_iter().map(|(s, w)| handle(&g, s, &w)).collect();
    let scalars: Vec<MonElement> = paths.iter().cloned().chain([MonElement::One, MonElement::Zero]).collect();
    let mut checked = 0;
    for a in &scalars {
        for b in &scalars {
            let ab = t.mul(a, b);
            for p in &paths {
                assert_eq!(bm.left.act_unchecked(&ab, p), bm.left.act_unchecked(a, &bm.left.act_unchecked(b, p)));
                checked += 1;
            }
        }
    }
    assert!(checked > 10_000);
    assert!(bm.check_axioms(4).is_ok());
}

#[test]
fn file_map_is_functorial() {
    let s = parse_space(corpus::file("empty2.grid").unwrap()).unwrap();
    let t = parse_space(corpus::file("empty3.grid").unwrap()).unwrap();
    let d = parse_dmap(corpus::file("empty2_into_empty3.dmap").unwrap(), &s, &t).unwrap();
    let f = SpaceMap::new(s.clone(), t.clone(), d).unwrap();
    assert!(trace_monoid_map(&f).check_morphism(4).is_ok());
    let (ps, pt) = (Pi1Module::new(&s), Pi1Module::new(&t));
    let m = pi1_map(&f, &ps, &pt).unwrap();
    assert!(m.check(4).is_ok());
    let id = trace_monoid_map(&SpaceMap::identity(&s));
    for (x, _) in trace_monoid(&s).elements_up_to(4) {
        assert_eq!(id.apply(&x).unwrap(), x);
    }
}

#[test]
fn translations_compose() {
    let a = Space::Grid(grid(2, 2, &[]));
    let b = Space::Grid(grid(3, 3, &[]));
    let c = Space::Grid(grid(4, 4, &[]));
    let f = SpaceMap::new(a.clone(), b.clone(), DMap::GridTranslation { dx: 1, dy: 0 }).unwrap();
    let g = SpaceMap::new(b, c, DMap::GridTranslation { dx: 0, dy: 1 }).unwrap();
    let gf = trace_monoid_map(&f.then(&g).unwrap());
    let (tf, tg) = (trace_monoid_map(&f), trace_monoid_map(&g));
    for (x, _) in trace_monoid(&a).elements_up_to(4) {
        assert_eq!(gf.apply(&x).unwrap(), tg.apply(&tf.apply(&x).unwrap()).unwrap());
    }
    let composable = |p: &MonElement, q: &MonElement, t: &ditrace_core::absorption_monoid::AbsMonoid| !t.mul(p, q).is_zero();
    let (ta, tb) = (trace_monoid(&a), trace_monoid(f.target()));
    let xs: Vec<MonElement> = ta.elements_up_to(2).into_iter().map(|(x, _)| x).filter(|x| matches!(x, MonElement::Word(_))).collect();
    for p in &xs {
        for q in &xs {
            let (fp, fq) = (tf.apply(p).unwrap(), tf.apply(q).unwrap());
            assert_eq!(composable(p, q, &ta), composable(&fp, &fq, &tb));
        }
    }
}

#[test]
fn translation_into_a_hole_is_rejected() {
    let s = Space::Grid(grid(2, 2, &[]));
    let t = Space::Grid(grid(3, 3, &[(1, 1)]));
    let f = SpaceMap::new(s.clone(), t.clone(), DMap::GridTranslation { dx: 0, dy: 0 }).unwrap();
    assert!(pi1_map(&f, &Pi1Module::new(&s), &Pi1Module::new(&t)).is_err());
    assert!(SpaceMap::new(s, t, DMap::GridTranslation { dx: 2, dy: 0 }).is_err());
}

/// Coordinate formulas written out independently of the library.
fn delta(k: usize, x: &[f64]) -> Vec<f64> {
    (0..=x.len()).map(|i| if i < k { x[i] } else if i == k { 0.0 } else { x[i - 1] }).collect()
}

fn sigma(k: usize, x: &[f64]) -> Vec<f64> {
    (0..x.len() - 1).map(|i| if i < k { x[i] } else if i == k { x[k] + x[k + 1] } else { x[i + 1] }).collect()
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-12)
}

fn simplex_point(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.001f64..1.0, n + 1).prop_map(|v| {
        let s: f64 = v.iter().sum();
        v.into_iter().map(|x| x / s).collect()
    })
}

proptest! {
    #[test]
    fn face_and_degeneracy_match_formulas(x in (1usize..=5).prop_flat_map(simplex_point)) {
        let p = SimplexPoint::new(x.clone()).unwrap();
        let m = x.len() - 1;
        for k in 0..=m + 1 {
            prop_assert_eq!(face_map(k, &p).unwrap().coords().to_vec(), delta(k, &x));
        }
        for k in 0..m {
            let s = degeneracy_map(k, &p).unwrap();
            prop_assert!(close(s.coords(), &sigma(k, &x)));
        }
    }

    #[test]
    fn simplicial_identities(x in (0usize..=5).prop_flat_map(simplex_point)) {
        let n = x.len() - 1;
        for j in 1..=n + 2 {
            for k in 0..j {
                prop_assert!(close(&delta(j, &delta(k, &x)), &delta(k, &delta(j - 1, &x))));
            }
        }
        for j in 0..n.saturating_sub(1) {
            for k in 0..=j {
                prop_assert!(close(&sigma(j, &sigma(k, &x)), &sigma(k, &sigma(j + 1, &x))));
            }
        }
        for j in 0..=n {
            prop_assert!(close(&sigma(j, &delta(j, &x)), &x));
            prop_assert!(close(&sigma(j, &delta(j + 1, &x)), &x));
            for k in 0..j {
                prop_assert!(close(&sigma(j, &delta(k, &x)), &delta(k, &sigma(j - 1, &x))));
            }
            for k in j + 2..=n + 1 {
                prop_assert!(close(&sigma(j, &delta(k, &x)), &delta(k - 1, &sigma(j, &x))));
            }
        }
    }

    #[test]
    fn random_grids_agree_with_oracle(w in 1u32..=4, h in 1u32..=3, cells in prop::collection::btree_set((0u32..4, 0u32..3), 0..4)) {
        let holes: Vec<(u32, u32)> = cells.into_iter().filter(|&(x, y)| x < w && y < h).collect();
        let g = grid(w, h, &holes);
        let uf = dihomotopy_classes(&g, (0, 0), (w, h));
        prop_assert_eq!(uf.len(), oracle_class_count(&g, (0, 0), (w, h)));
        prop_assert_eq!(&uf, &dihomotopy_classes_flood(&g, (0, 0), (w, h)));
        let all: usize = uf.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(all, enumerate_dipaths(&g, (0, 0), (w, h)).len());
    }

    #[test]
    fn embedding_preserves_class_partition(dx in 0u32..=2, dy in 0u32..=2, hole in prop::option::of((0u32..2, 0u32..2))) {
        let src = grid(2, 2, &hole.into_iter().collect::<Vec<_>>());
        let tgt_holes: Vec<(u32, u32)> = hole.map(|(x, y)| (x + dx, y + dy)).into_iter().collect();
        let tgt = grid(4, 4, &tgt_holes);
        let f = SpaceMap::new(Space::Grid(src.clone()), Space::Grid(tgt.clone()), DMap::GridTranslation { dx, dy }).unwrap();
        let m = pi1_map(&f, &Pi1Module::new(f.source()), &Pi1Module::new(f.target())).unwrap();
        // Recompute the partition in the target and compare with the images.
        let target_classes = dihomotopy_classes(&tgt, (dx, dy), (dx + 2, dy + 2));
        let class_in_target: BTreeMap<Vec<u32>, Vec<u32>> = target_classes
            .iter()
            .flat_map(|c| c.members.iter().map(move |p| (p.clone(), c.representative.clone())))
            .collect();
        for c in dihomotopy_classes(&src, (0, 0), (2, 2)) {
            let image = m.apply(&handle(&src, (0, 0), &c.representative));
            for p in &c.members {
                prop_assert_eq!(&image, &handle(&tgt, (dx, dy), &class_in_target[p]));
            }
        }
    }
}
