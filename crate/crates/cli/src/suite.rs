//! The property suite behind `verify all`: one entry per acceptance
//! criterion, each checked against an oracle that does not share code with
//! the implementation it checks where that is practical.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::unionfind::UnionFind;
use rand::Rng;
use serde::Serialize;

use ditrace_core::absorption_monoid::{
    all_submonoids, all_table_monoids, AbsMonoid, FiniteAbsMonoid, MonElement, MonoidMorphism,
};
use ditrace_core::corpus;
use ditrace_core::directed_space::{
    check_simplicial_identities, dihomotopy_classes, dihomotopy_classes_flood, path_bimodule, GridSpace, Pi1Module,
    Space,
};
use ditrace_core::error::Result;
use ditrace_core::pointed_modules::{
    module_from_transition_system, transition_system_from_module, Carrier, LeftModule,
};
use ditrace_core::scalar_functors::{
    adjunction_left_check, adjunction_right_check, group_preservation_check, ScalarChange,
};

use crate::commands::{functor_laws, rng};

/// Sizes and counts for one run of the suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Largest table monoid enumerated for the monoid and quotient criteria.
    pub monoid_size: usize,
    /// `|T|`, `|T'|` and carrier cap for adjunction instances.
    pub adjunction_size: usize,
    pub adjunction_instances: usize,
    /// Largest grid side for the bimodule criterion and random embeddings.
    pub grid_side: u32,
    pub transition_systems: usize,
    pub embeddings: usize,
    pub simplex_points: usize,
    pub simplex_max_n: usize,
    /// Word-length bound `L`.
    pub bound: usize,
    pub budget: usize,
}

impl SuiteConfig {
    /// The sizes used by `verify all --max-size k`.
    pub fn scaled(seed: u64, max_size: usize, bound: usize, budget: usize) -> Self {
        SuiteConfig {
            seed,
            monoid_size: max_size.max(2),
            adjunction_size: max_size.max(2),
            adjunction_instances: 50,
            grid_side: max_size.max(1) as u32,
            transition_systems: 100,
            embeddings: 20,
            simplex_points: 1000,
            simplex_max_n: 5,
            bound,
            budget,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub checked: u64,
    pub failures: Vec<String>,
}

impl Outcome {
    fn new(name: &'static str) -> Self {
        Outcome {
            name,
            passed: true,
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.passed = false;
        if self.failures.len() < 20 {
            self.failures.push(what);
        }
    }

    fn error(&mut self, what: String) {
        self.expect(false, || what);
    }

    pub fn line(&self) -> String {
        format!(
            "{}: {} ({} checks)",
            self.name,
            if self.passed { "pass" } else { "FAIL" },
            self.checked
        )
    }
}

fn table_monoids(max: usize) -> Vec<AbsMonoid> {
    (2..=max)
        .flat_map(all_table_monoids)
        .map(|t| AbsMonoid::from_table(t).expect("enumerated tables are monoids"))
        .collect()
}

/// Every table monoid of size 2..=n and every bundled monoid satisfy the five
/// laws, and so do products, coproducts, quotients and free monoids built
/// from them.
pub fn monoid_axioms(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::new("monoid axioms");
    for n in 2..=cfg.monoid_size {
        for t in all_table_monoids(n) {
            let r = t.check_axioms();
            out.expect(r.is_ok(), || r.to_string());
        }
    }
    match corpus::monoids() {
        Ok(ms) => {
            for (name, m) in ms {
                let r = m.check_axioms_bounded(cfg.bound);
                out.expect(r.is_ok(), || format!("{name}: {r}"));
            }
        }
        Err(e) => out.error(e.to_string()),
    }
    let small = table_monoids(cfg.monoid_size.min(3));
    for a in &small {
        for b in &small {
            for m in [AbsMonoid::product(vec![a.clone(), b.clone()]), AbsMonoid::coproduct(vec![a.clone(), b.clone()])] {
                match m {
                    Ok(m) => {
                        let r = m.check_axioms_bounded(cfg.bound);
                        out.expect(r.is_ok(), || r.to_string());
                    }
                    Err(e) => out.error(e.to_string()),
                }
            }
        }
    }
    for m in table_monoids(cfg.monoid_size.min(4)) {
        for sub in all_submonoids(&m).expect("finite") {
            match m.quotient(sub) {
                Ok(q) => {
                    let r = q.check_axioms_bounded(cfg.bound);
                    out.expect(r.is_ok(), || r.to_string());
                }
                Err(e) => out.error(e.to_string()),
            }
        }
    }
    let free = AbsMonoid::free(&["a", "b"]);
    let r = free.check_axioms_bounded(cfg.bound.min(4));
    out.expect(r.is_ok(), || r.to_string());
    out
}

/// Partition of a table monoid by the congruence generated by `n ~ 0` for
/// every `n` in `kill`, by closing a union-find under multiplication on both
/// sides until nothing changes.
pub fn congruence_partition(t: &FiniteAbsMonoid, kill: &BTreeSet<usize>) -> BTreeSet<BTreeSet<usize>> {
    let n = t.len();
    let mut uf = UnionFind::<usize>::new(n);
    for &k in kill {
        uf.union(k, t.zero());
    }
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in 0..n {
                if a == b || !uf.equiv(a, b) {
                    continue;
                }
                for c in 0..n {
                    changed |= uf.union(t.mul(c, a), t.mul(c, b));
                    changed |= uf.union(t.mul(a, c), t.mul(b, c));
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut classes: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for x in 0..n {
        classes.entry(uf.find(x)).or_default().insert(x);
    }
    classes.into_values().collect()
}

/// The ideal-membership quotient and the congruence closure give the same
/// partition for every table monoid up to the size cap and every
/// sub-monoid.
pub fn quotient_oracle(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::new("quotient oracle");
    for m in table_monoids(cfg.monoid_size) {
        let t = m.as_table().expect("table").clone();
        for sub in all_submonoids(&m).expect("finite") {
            let kill: BTreeSet<usize> = sub
                .elements(&m, cfg.bound)
                .iter()
                .map(|x| AbsMonoid::table_index(&t, x).expect("element of the table"))
                .collect();
            let expected = congruence_partition(&t, &kill);
            let q = m.quotient(sub).expect("sub-monoid of m");
            let mut classes: BTreeMap<MonElement, BTreeSet<usize>> = BTreeMap::new();
            for i in 0..t.len() {
                let x = AbsMonoid::table_handle(&t, i);
                classes.entry(q.class_of(&x).expect("element")).or_default().insert(i);
            }
            let got: BTreeSet<BTreeSet<usize>> = classes.into_values().collect();
            out.expect(got == expected, || {
                format!("{}: kill {kill:?}: quotient {got:?}, congruence {expected:?}", m.describe())
            });
        }
    }
    out
}

fn grids(side: u32) -> Vec<GridSpace> {
    let mut out = Vec::new();
    for w in 1..=side {
        for h in 1..=side {
            out.push(GridSpace::new(w, h).expect("positive"));
            if w >= 3 && h >= 3 {
                out.push(GridSpace::new(w, h).expect("positive").with_forbidden(&[(1, 1)]).expect("inside"));
            }
        }
    }
    out
}

/// Module laws for regular actions, random transition systems, bundled
/// modules, and the path and class bimodules of small grids.
pub fn module_axioms(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::new("module axioms");
    for t in table_monoids(cfg.monoid_size.min(4)) {
        let r = LeftModule::regular(&t).check_module_axioms(cfg.bound);
        out.expect(r.is_ok(), || r.to_string());
    }
    let mut r = rng(cfg.seed);
    for _ in 0..cfg.transition_systems {
        let ts = corpus::random_transition_system(&mut r, 5, 2);
        let rep = module_from_transition_system(&ts).check_module_axioms(cfg.bound);
        out.expect(rep.is_ok(), || rep.to_string());
    }
    match corpus::modules() {
        Ok(ms) => {
            for (name, m) in ms {
                let rep = m.check_module_axioms(cfg.bound);
                out.expect(rep.is_ok(), || format!("{name}: {rep}"));
            }
        }
        Err(e) => out.error(e.to_string()),
    }
    for g in grids(cfg.grid_side) {
        let space = Space::Grid(g);
        let rep = path_bimodule(&space).check_axioms(cfg.bound);
        out.expect(rep.is_ok(), || rep.to_string());
    }
    for g in grids(cfg.grid_side.min(3)) {
        let rep = Pi1Module::new(&Space::Grid(g)).bimodule().check_axioms(cfg.bound.min(4));
        out.expect(rep.is_ok(), || rep.to_string());
    }
    out
}

/// Transition system -> module -> transition system is the identity.
pub fn transition_round_trip(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::new("transition round trip");
    // A separate stream from the module-axiom systems.
    let mut r = rng(cfg.seed.wrapping_add(1));
    for _ in 0..cfg.transition_systems {
        let letters = r.gen_range(1..=3);
        let ts = corpus::random_transition_system(&mut r, 5, letters);
        let back = transition_system_from_module(&module_from_transition_system(&ts));
        out.expect(back.as_ref() == Ok(&ts), || format!("{ts:?} came back as {back:?}"));
    }
    if let Ok(ts) = corpus::transition_systems() {
        for (name, ts) in ts {
            let back = transition_system_from_module(&module_from_transition_system(&ts));
            out.expect(back.as_ref() == Ok(&ts), || format!("{name} did not round-trip"));
        }
    }
    out
}

/// Both adjunctions on generated instances: equal Hom counts, identity
/// round trips and natural bijections.
pub fn adjunctions(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::new("adjunctions");
    let instances = corpus::adjunction_instances(&mut rng(cfg.seed), cfg.adjunction_size, cfg.adjunction_instances);
    for (i, inst) in instances.iter().enumerate() {
        let left = adjunction_left_check(&inst.l, &inst.over_source, &inst.over_target, cfg.budget);
        let right = adjunction_right_check(&inst.l, &inst.over_target, &inst.over_source);
        for r in [left, right] {
            match r {
                Ok(r) => out.expect(r.is_ok(), || format!("instance {i} ({:?}): {:?}", r.side, r.failures)),
                Err(e) => out.error(format!("instance {i}: {e}")),
            }
        }
    }
    out
}

fn table(t: FiniteAbsMonoid) -> AbsMonoid {
    AbsMonoid::from_table(t).expect("valid table")
}

/// Words of length at most 3 over absorption groups keep reversed-inverse
/// inverses after extension of scalars.
pub fn group_preservation(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::new("group preservation");
    let z2 = table(FiniteAbsMonoid::cyclic_group_with_zero(2));
    let z3 = table(FiniteAbsMonoid::cyclic_group_with_zero(3));
    let z4 = table(FiniteAbsMonoid::cyclic_group_with_zero(4));
    let two = AbsMonoid::two_element();
    let into = |s: &AbsMonoid, t: &AbsMonoid, images: Vec<(MonElement, MonElement)>| {
        let mut map: BTreeMap<MonElement, MonElement> = images.into_iter().collect();
        map.insert(MonElement::Zero, MonElement::Zero);
        map.insert(s.one(), t.one());
        ScalarChange::new(MonoidMorphism::from_table(s.clone(), t.clone(), map).expect("total"), 0)
    };
    let g = MonElement::letter(2);
    let cases: Vec<(&str, Result<ScalarChange>, LeftModule)> = vec![
        ("Z/2 on Z/2 along id", Ok(ScalarChange::identity(&z2)), LeftModule::trivial_action(&z2, Carrier::Mon(z2.clone()))),
        ("Z/2 on Z/3 along id", Ok(ScalarChange::identity(&z2)), LeftModule::trivial_action(&z2, Carrier::Mon(z3.clone()))),
        ("{0,1} on Z/3 into Z/2", into(&two, &z2, vec![]), LeftModule::trivial_action(&two, Carrier::Mon(z3.clone()))),
        ("{0,1} on Z/2 into Z/3", into(&two, &z3, vec![]), LeftModule::trivial_action(&two, Carrier::Mon(z2.clone()))),
        (
            "Z/2 on Z/3 into Z/4",
            into(&z2, &z4, vec![(g.clone(), MonElement::letter(3))]),
            LeftModule::trivial_action(&z2, Carrier::Mon(z3.clone())),
        ),
    ];
    for (name, l, module) in cases {
        let report = l.and_then(|l| group_preservation_check(&l, &module, 3, cfg.budget));
        match report {
            Ok(r) => {
                out.checked += r.words_checked as u64;
                if !r.is_ok() || r.undecided > 0 {
                    out.fail(format!("{name}: {} undecided, {:?}", r.undecided, r.failures));
                }
            }
            Err(e) => out.error(format!("{name}: {e}")),
        }
    }
    if let Ok(ms) = corpus::modules() {
        for (name, m) in ms.into_iter().filter(|(_, m)| m.carrier().is_mon()) {
            let l = ScalarChange::identity(m.scalars());
            match group_preservation_check(&l, &m, 3, cfg.budget) {
                Ok(r) => out.expect(r.is_ok() && r.undecided == 0, || format!("{name}: {:?}", r.failures)),
                Err(e) => out.error(format!("{name}: {e}")),
            }
        }
    }
    out
}

/// The five face/degeneracy identity families at the crate tolerance.
pub fn simplicial_identities(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::new("simplicial identities");
    for c in check_simplicial_identities(cfg.simplex_max_n, cfg.simplex_points, &mut rng(cfg.seed)) {
        out.expect(c.passed(), || {
            format!("{:?} n={} j={} k={}: max error {:e}", c.family, c.n, c.j, c.k, c.max_error)
        });
    }
    out
}

/// Brute-force partition of lattice paths, enumerated as bit masks (bit
/// set = up step) and merged in reverse order.
pub fn brute_force_classes(grid: &GridSpace, a: (u32, u32), b: (u32, u32)) -> BTreeSet<BTreeSet<Vec<bool>>> {
    let (r, u) = ((b.0 - a.0) as usize, (b.1 - a.1) as usize);
    let len = r + u;
    let paths: Vec<Vec<bool>> = (0u64..1 << len)
        .filter(|m| m.count_ones() as usize == u)
        .map(|m| (0..len).map(|i| m >> i & 1 == 1).collect())
        .collect();
    let index: BTreeMap<&Vec<bool>, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut uf = UnionFind::<usize>::new(paths.len());
    for (i, p) in paths.iter().enumerate().rev() {
        let (mut x, mut y) = a;
        for k in 0..len.saturating_sub(1) {
            if p[k] != p[k + 1] && !grid.forbidden.contains(&(x, y)) {
                let mut q = p.clone();
                q.swap(k, k + 1);
                uf.union(i, index[&q]);
            }
            if p[k] {
                y += 1;
            } else {
                x += 1;
            }
        }
    }
    let mut classes: BTreeMap<usize, BTreeSet<Vec<bool>>> = BTreeMap::new();
    for (i, p) in paths.into_iter().enumerate() {
        classes.entry(uf.find(i)).or_default().insert(p);
    }
    classes.into_values().collect()
}

fn as_partition(classes: &[ditrace_core::directed_space::DihomotopyClass]) -> BTreeSet<BTreeSet<Vec<bool>>> {
    classes
        .iter()
        .map(|c| {
            c.members
                .iter()
                .map(|p| p.iter().map(|&s| s == ditrace_core::directed_space::STEP_U).collect())
                .collect()
        })
        .collect()
}

/// Corner-to-corner class counts on the bundled grids: fixed answers where
/// known, the brute-force oracle and both closure strategies everywhere.
pub fn dihomotopy_counts(_cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::new("dihomotopy counts");
    let expected: BTreeMap<&str, usize> = BTreeMap::from([("empty2.grid", 1), ("empty3.grid", 1), ("hole3.grid", 2)]);
    let spaces = match corpus::spaces() {
        Ok(s) => s,
        Err(e) => {
            out.error(e.to_string());
            return out;
        }
    };
    for (name, space) in spaces {
        let Space::Grid(g) = space else { continue };
        let (a, b) = ((0, 0), (g.width, g.height));
        let union_find = dihomotopy_classes(&g, a, b);
        let flood = dihomotopy_classes_flood(&g, a, b);
        let oracle = brute_force_classes(&g, a, b);
        out.expect(as_partition(&union_find) == oracle, || format!("{name}: union-find classes differ from oracle"));
        out.expect(as_partition(&flood) == oracle, || format!("{name}: flood classes differ from oracle"));
        if let Some(&n) = expected.get(name.as_str()) {
            out.expect(union_find.len() == n, || format!("{name}: {} classes, expected {n}", union_find.len()));
        }
    }
    out
}

/// Acting by every trace of length <= 3 gives the same class from every
/// representative, for every class of every bundled model.
pub fn pi1_well_defined(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::new("pi1 action well-defined");
    let Ok(spaces) = corpus::spaces() else {
        out.error("bundled spaces do not parse".into());
        return out;
    };
    for (name, space) in spaces {
        let pi = Pi1Module::new(&space);
        let class_bound = space.max_path_length().unwrap_or(cfg.bound);
        match pi.check_representative_independence(class_bound, 3) {
            Ok(n) => out.checked += n,
            Err((t, m)) => out.fail(format!("{name}: trace {t} on {m}")),
        }
    }
    out
}

/// `T(id) = id`, `T(g.f) = T(g).T(f)` and the module-morphism law for
/// `pi1(f)` on random composable grid embeddings.
pub fn functoriality(cfg: &SuiteConfig) -> Outcome {
    let mut out = Outcome::new("functoriality");
    let mut r = rng(cfg.seed);
    for i in 0..cfg.embeddings {
        let a = corpus::random_grid(&mut r, cfg.grid_side, cfg.grid_side, 0.2);
        let f = corpus::random_embedding(&mut r, &a, 0.2);
        let Space::Grid(b) = f.target().clone() else { unreachable!("grid embeddings") };
        let g = corpus::random_embedding(&mut r, &b, 0.2);
        match functor_laws(&f, Some(&g), cfg.bound.min(4)) {
            Ok(laws) => {
                for (law, ok) in laws {
                    out.expect(ok, || format!("embedding {i}: {law}"));
                }
            }
            Err(e) => out.error(format!("embedding {i}: {e}")),
        }
    }
    let grid = corpus::spaces().ok().and_then(|s| s.into_iter().find(|(n, _)| n == "empty3.grid"));
    if let Some((_, s)) = grid {
        let id = ditrace_core::directed_space::SpaceMap::identity(&s);
        match functor_laws(&id, Some(&id), cfg.bound.min(4)) {
            Ok(laws) => laws.into_iter().for_each(|(law, ok)| out.expect(ok, || format!("identity: {law}"))),
            Err(e) => out.error(e.to_string()),
        }
    }
    out
}

pub type Criterion = fn(&SuiteConfig) -> Outcome;

/// Every criterion in a fixed order.
pub const ALL: &[Criterion] = &[
    monoid_axioms,
    quotient_oracle,
    module_axioms,
    transition_round_trip,
    adjunctions,
    group_preservation,
    simplicial_identities,
    dihomotopy_counts,
    pi1_well_defined,
    functoriality,
];

pub fn run_all(cfg: &SuiteConfig) -> Vec<Outcome> {
    ALL.iter().map(|c| c(cfg)).collect()
}
