//! Bundled example inputs and seeded generators of random finite instances.
//!
//! Every generator takes an explicit RNG; callers seed a
//! [`rand_chacha::ChaCha8Rng`] so that runs are reproducible.

use std::collections::BTreeMap;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::absorption_monoid::{all_table_monoids, AbsMonoid, FiniteAbsMonoid, MonElement, MonoidMorphism};
use crate::directed_space::{DMap, GridSpace, Space, SpaceMap};
use crate::error::{Error, Result};
use crate::format;
use crate::pointed_modules::{Carrier, LeftModule, PointedSet, TransitionSystem};
use crate::scalar_functors::ScalarChange;

macro_rules! bundle {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name)))),*]
    };
}

/// Every bundled file as `(file name, contents)`.
pub const FILES: &[(&str, &str)] = bundle![
    "two.monoid",
    "z2.monoid",
    "z3.monoid",
    "z4.monoid",
    "semilattice.monoid",
    "nilpotent.monoid",
    "free_ab.monoid",
    "counter.ts",
    "counter.module",
    "two_pair.module",
    "z2_swap.module",
    "z3_rotate.module",
    "z2_on_z3.module",
    "two_to_z2.morphism",
    "z2_to_z4.morphism",
    "empty2.grid",
    "empty3.grid",
    "hole3.grid",
    "swiss5.grid",
    "diamond.graph",
    "empty2_into_empty3.dmap",
];

pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

fn with_suffix(suffix: &str) -> impl Iterator<Item = &'static (&'static str, &'static str)> + '_ {
    FILES.iter().filter(move |(n, _)| n.ends_with(suffix))
}

fn bundled_monoid(name: &str) -> Result<AbsMonoid> {
    let text = file(name).ok_or_else(|| Error::Io(format!("no bundled file {name}")))?;
    format::parse_monoid(text)?.build()
}

pub fn monoids() -> Result<Vec<(String, AbsMonoid)>> {
    with_suffix(".monoid")
        .map(|(n, t)| Ok((n.to_string(), format::parse_monoid(t)?.build()?)))
        .collect()
}

pub fn spaces() -> Result<Vec<(String, Space)>> {
    with_suffix(".grid")
        .chain(with_suffix(".graph"))
        .map(|(n, t)| Ok((n.to_string(), format::parse_space(t)?)))
        .collect()
}

pub fn transition_systems() -> Result<Vec<(String, TransitionSystem)>> {
    with_suffix(".ts")
        .map(|(n, t)| Ok((n.to_string(), format::parse_transition_system(t)?)))
        .collect()
}

pub fn modules() -> Result<Vec<(String, LeftModule)>> {
    with_suffix(".module")
        .map(|(n, t)| Ok((n.to_string(), format::parse_module(t, &mut |r| bundled_monoid(r))?)))
        .collect()
}

pub fn morphisms() -> Result<Vec<(String, MonoidMorphism)>> {
    with_suffix(".morphism")
        .map(|(n, t)| Ok((n.to_string(), format::parse_morphism(t, &mut |r| bundled_monoid(r))?)))
        .collect()
}

/// Write the bundled files into `dir` (for use with the command line).
pub fn export(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    for (name, text) in FILES {
        let p = dir.join(name);
        std::fs::write(&p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

/// A uniformly chosen absorption monoid with exactly `size` elements, up to
/// the labelling produced by table enumeration.
pub fn random_table_monoid<R: Rng + ?Sized>(rng: &mut R, size: usize) -> FiniteAbsMonoid {
    all_table_monoids(size).choose(rng).cloned().expect("every size has a monoid")
}

/// Every morphism between two finite absorption monoids.
pub fn all_morphisms(source: &AbsMonoid, target: &AbsMonoid) -> Vec<MonoidMorphism> {
    let (Some(src), Some(tgt)) = (source.elements(), target.elements()) else {
        return Vec::new();
    };
    let free: Vec<&MonElement> = src.iter().filter(|x| !x.is_zero() && **x != source.one()).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; free.len()];
    loop {
        let mut images = BTreeMap::from([(MonElement::Zero, MonElement::Zero), (source.one(), target.one())]);
        for (x, &c) in free.iter().zip(&choice) {
            images.insert((*x).clone(), tgt[c].clone());
        }
        if let Ok(f) = MonoidMorphism::from_table(source.clone(), target.clone(), images) {
            if f.check_morphism(0).is_ok() {
                out.push(f);
            }
        }
        // Odometer over the choices.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < tgt.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Every `Set*` module structure on `{*, s1, .., s(points)}` over a finite
/// `T`. The zero and unit act as forced; other scalars range over all
/// basepoint-preserving maps.
pub fn all_set_modules(t: &AbsMonoid, points: usize) -> Vec<LeftModule> {
    let Some(ts) = t.elements() else {
        return Vec::new();
    };
    let carrier = PointedSet::with_points(points);
    let elems: Vec<MonElement> = (0..=points).map(PointedSet::point).collect();
    let free: Vec<&MonElement> = ts.iter().filter(|x| !x.is_zero() && **x != t.one()).collect();
    // One map per free scalar, encoded as images of s1..sn.
    let maps_per_scalar = (points + 1).pow(points as u32);
    let total = maps_per_scalar.pow(free.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut table = BTreeMap::new();
        for m in &elems {
            table.insert((MonElement::Zero, m.clone()), MonElement::Zero);
            table.insert((t.one(), m.clone()), m.clone());
        }
        let mut c = code;
        for s in &free {
            let mut map = c % maps_per_scalar;
            c /= maps_per_scalar;
            table.insert(((*s).clone(), MonElement::Zero), MonElement::Zero);
            for m in &elems[1..] {
                table.insert(((*s).clone(), m.clone()), elems[map % (points + 1)].clone());
                map /= points + 1;
            }
        }
        let module = LeftModule::from_table(t.clone(), Carrier::Set(carrier.clone()), table).expect("total table");
        if module.check_module_axioms(0).is_ok() {
            out.push(module);
        }
    }
    out
}

/// A finite adjunction test case: `l: T -> T'`, a module over `T` and a
/// module over `T'`.
#[derive(Clone, Debug)]
pub struct AdjunctionInstance {
    pub l: ScalarChange,
    pub over_source: LeftModule,
    pub over_target: LeftModule,
}

/// `count` random instances with `|T|, |T'| <= max_size` and carriers of at
/// most `max_size` elements (basepoint included), pointed-set carriers.
pub fn adjunction_instances<R: Rng + ?Sized>(rng: &mut R, max_size: usize, count: usize) -> Vec<AdjunctionInstance> {
    let max_size = max_size.max(2);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (n, np) = (rng.gen_range(2..=max_size), rng.gen_range(2..=max_size));
        let t = AbsMonoid::from_table(random_table_monoid(rng, n)).expect("enumerated");
        let tp = AbsMonoid::from_table(random_table_monoid(rng, np)).expect("enumerated");
        let Some(l) = all_morphisms(&t, &tp).choose(rng).cloned() else {
            continue;
        };
        let l = ScalarChange::new(l, 0).expect("filtered morphism");
        let m = all_set_modules(&t, rng.gen_range(1..max_size)).choose(rng).cloned();
        let mp = all_set_modules(&tp, rng.gen_range(1..max_size)).choose(rng).cloned();
        if let (Some(over_source), Some(over_target)) = (m, mp) {
            out.push(AdjunctionInstance {
                l,
                over_source: over_source.named(format!("M over {}", t.describe())),
                over_target: over_target.named(format!("M' over {}", tp.describe())),
            });
        }
    }
    out
}

/// A random deterministic transition system with `1..=max_states` states
/// over `letters` letters; each transition is present with probability 3/4.
pub fn random_transition_system<R: Rng + ?Sized>(rng: &mut R, max_states: usize, letters: usize) -> TransitionSystem {
    let n = rng.gen_range(1..=max_states.max(1));
    let states = (0..n).map(|i| format!("q{i}")).collect();
    let names = (0..letters).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut ts = TransitionSystem::new(states, names);
    for s in 0..n {
        for a in 0..letters {
            if rng.gen_bool(0.75) {
                ts.add(s, a, rng.gen_range(0..n)).expect("fresh pair");
            }
        }
    }
    ts
}

/// A random grid of size at most `max_w x max_h` with each cell forbidden
/// with probability `p`.
pub fn random_grid<R: Rng + ?Sized>(rng: &mut R, max_w: u32, max_h: u32, p: f64) -> GridSpace {
    let mut g = GridSpace::new(rng.gen_range(1..=max_w), rng.gen_range(1..=max_h)).expect("positive");
    for x in 0..g.width {
        for y in 0..g.height {
            if rng.gen_bool(p) {
                g.forbid_cell(x, y).expect("in range");
            }
        }
    }
    g
}

/// A random translation embedding of `source` into a larger grid whose
/// forbidden cells avoid the image of every allowed source cell.
pub fn random_embedding<R: Rng + ?Sized>(rng: &mut R, source: &GridSpace, p: f64) -> SpaceMap {
    let (dx, dy) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
    let mut t = GridSpace::new(source.width + dx + rng.gen_range(0..=1), source.height + dy + rng.gen_range(0..=1))
        .expect("positive");
    for x in 0..t.width {
        for y in 0..t.height {
            let inside = x >= dx && y >= dy && x - dx < source.width && y - dy < source.height;
            let forbid = if inside { source.is_forbidden(x - dx, y - dy) && rng.gen_bool(0.5) } else { rng.gen_bool(p) };
            if forbid {
                t.forbid_cell(x, y).expect("in range");
            }
        }
    }
    SpaceMap::new(Space::Grid(source.clone()), Space::Grid(t), DMap::GridTranslation { dx, dy }).expect("fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bundled_files_parse() {
        assert_eq!(monoids().unwrap().len(), 7);
        assert_eq!(spaces().unwrap().len(), 5);
        assert_eq!(transition_systems().unwrap().len(), 1);
        let counter = modules().unwrap().into_iter().find(|(n, _)| n == "counter.module").unwrap().1;
        let ts = &transition_systems().unwrap()[0].1;
        assert_eq!(&crate::pointed_modules::transition_system_from_module(&counter).unwrap(), ts);
        for (name, m) in modules().unwrap() {
            assert!(m.check_module_axioms(4).is_ok(), "{name}");
        }
        for (name, f) in morphisms().unwrap() {
            assert!(f.check_morphism(4).is_ok(), "{name}");
        }
    }

    #[test]
    fn morphisms_from_two_element() {
        let z2 = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(2)).unwrap();
        assert_eq!(all_morphisms(&AbsMonoid::two_element(), &z2).len(), 1);
        // g -> 1 or g -> g.
        assert_eq!(all_morphisms(&z2, &z2).len(), 2);
    }

    #[test]
    fn set_modules_over_two_element() {
        // Only the forced action exists.
        assert_eq!(all_set_modules(&AbsMonoid::two_element(), 2).len(), 1);
        let z2 = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(2)).unwrap();
        // Involutions of {*, s}: g.s = s only (g.s = * breaks g.g.s = s).
        assert_eq!(all_set_modules(&z2, 1).len(), 1);
    }

    #[test]
    fn generators_are_seeded() {
        let a = adjunction_instances(&mut ChaCha8Rng::seed_from_u64(3), 3, 5);
        let b = adjunction_instances(&mut ChaCha8Rng::seed_from_u64(3), 3, 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.over_source.carrier(), y.over_source.carrier());
        }
        let g = random_grid(&mut ChaCha8Rng::seed_from_u64(1), 3, 3, 0.3);
        let f = random_embedding(&mut ChaCha8Rng::seed_from_u64(1), &g, 0.3);
        assert!(f.check_swaps().is_ok());
    }
}
