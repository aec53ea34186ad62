use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::classes::dihomotopy_classes;
use super::space::Space;
use crate::absorption_monoid::{AbsMonoid, MonElement};
use crate::error::{Error, Result};
use crate::pointed_modules::{Bimodule, Carrier, LazyCarrier, LeftModule, PointedSet, RightModule};

/// The trace monoid of a space: d-paths with concatenation, zero for
/// non-composable pairs, and an adjoined unit.
pub fn trace_monoid(space: &Space) -> AbsMonoid {
    AbsMonoid::path(space.clone())
}

fn path_parts(x: &MonElement) -> Option<(u32, &[u32])> {
    match x {
        MonElement::Word(w) => Some((w[0], &w[1..])),
        _ => None,
    }
}

fn path_handle(start: u32, steps: &[u32]) -> MonElement {
    let mut w = Vec::with_capacity(steps.len() + 1);
    w.push(start);
    w.extend_from_slice(steps);
    MonElement::Word(w)
}

/// D-paths plus `*`.
#[derive(Debug)]
struct PathCarrier {
    space: Space,
}

impl LazyCarrier for PathCarrier {
    fn describe(&self) -> String {
        format!("d-paths of {}", self.space.describe())
    }

    fn contains(&self, x: &MonElement) -> bool {
        match x {
            MonElement::Zero => true,
            MonElement::Word(w) => self.space.path_valid(w[0], &w[1..]),
            _ => false,
        }
    }

    fn size_of(&self, x: &MonElement) -> usize {
        path_parts(x).map_or(0, |(_, s)| s.len())
    }

    fn elements_up_to(&self, bound: usize) -> Vec<(MonElement, usize)> {
        let mut out = vec![(MonElement::Zero, 0)];
        for v in 0..self.space.vertex_count() as u32 {
            for steps in self.space.paths_from(v, bound) {
                let n = steps.len();
                out.push((path_handle(v, &steps), n));
            }
        }
        out
    }

    fn finite_bound(&self) -> Option<usize> {
        self.space.max_path_length()
    }

    fn label(&self, x: &MonElement) -> String {
        match path_parts(x) {
            Some((v, s)) => self.space.label_path(v, s),
            None => "*".into(),
        }
    }

    fn parse(&self, s: &str) -> Option<MonElement> {
        if s.trim() == "*" {
            return Some(MonElement::Zero);
        }
        self.space.parse_path(s).map(|(v, steps)| path_handle(v, &steps))
    }
}

fn concat(space: &Space, p: &MonElement, q: &MonElement) -> MonElement {
    match (path_parts(p), path_parts(q)) {
        (Some((a, s)), Some((b, t))) if space.path_end(a, s) == b => {
            let mut steps = s.to_vec();
            steps.extend_from_slice(t);
            path_handle(a, &steps)
        }
        _ => MonElement::Zero,
    }
}

/// D-paths and `*` as a bimodule over the trace monoid, acting by
/// concatenation on both sides (non-composable gives `*`).
pub fn path_bimodule(space: &Space) -> Bimodule {
    let t = trace_monoid(space);
    let carrier = Carrier::Set(PointedSet::lazy(Arc::new(PathCarrier { space: space.clone() })));
    let (s1, s2) = (space.clone(), space.clone());
    let left = LeftModule::new(t.clone(), carrier.clone(), move |t, p| match t {
        MonElement::One => p.clone(),
        _ => concat(&s1, t, p),
    })
    .named(format!("left path module of {}", space.describe()));
    let right = RightModule::new(t, carrier, move |p, t| match t {
        MonElement::One => p.clone(),
        _ => concat(&s2, p, t),
    });
    Bimodule::new(left, right).expect("same carrier")
}

type ClassMap = HashMap<Vec<u32>, Vec<u32>>;

/// Dihomotopy classes of a space, computed per endpoint pair on first use.
/// A class is represented by the handle of its least member path.
pub struct Pi1Carrier {
    space: Space,
    cache: Mutex<HashMap<(u32, u32), Arc<ClassMap>>>,
}

impl fmt::Debug for Pi1Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pi1Carrier({})", self.space.describe())
    }
}

impl Pi1Carrier {
    pub fn new(space: Space) -> Self {
        Pi1Carrier {
            space,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    fn classes_between(&self, a: u32, b: u32) -> Arc<ClassMap> {
        if let Some(m) = self.cache.lock().unwrap().get(&(a, b)) {
            return m.clone();
        }
        let map: ClassMap = match &self.space {
            Space::Grid(g) => dihomotopy_classes(g, g.coords(a), g.coords(b))
                .into_iter()
                .flat_map(|c| {
                    let rep = c.representative;
                    c.members.into_iter().map(move |m| (m, rep.clone()))
                })
                .collect(),
            // Graphs have no squares: every path is its own class.
            Space::Graph(_) => HashMap::new(),
        };
        let map = Arc::new(map);
        self.cache.lock().unwrap().insert((a, b), map.clone());
        map
    }

    /// Representative steps of the class of a valid path.
    pub fn representative(&self, start: u32, steps: &[u32]) -> Vec<u32> {
        match &self.space {
            Space::Graph(_) => steps.to_vec(),
            Space::Grid(_) => {
                let end = self.space.path_end(start, steps);
                self.classes_between(start, end)[steps].clone()
            }
        }
    }

    /// Class handle of a path handle (`*` for anything else).
    pub fn class_of(&self, path: &MonElement) -> MonElement {
        match path_parts(path) {
            Some((v, s)) if self.space.path_valid(v, s) => path_handle(v, &self.representative(v, s)),
            _ => MonElement::Zero,
        }
    }

    /// All class handles between two vertices, in representative order.
    pub fn classes(&self, a: u32, b: u32) -> Vec<MonElement> {
        let mut reps: Vec<MonElement> = match &self.space {
            Space::Grid(_) => {
                let mut r: Vec<Vec<u32>> = self.classes_between(a, b).values().cloned().collect();
                r.sort();
                r.dedup();
                r.into_iter().map(|s| path_handle(a, &s)).collect()
            }
            Space::Graph(_) => self
                .space
                .paths_from(a, self.space.max_path_length().unwrap_or(crate::DEFAULT_BOUND))
                .into_iter()
                .filter(|s| self.space.path_end(a, s) == b)
                .map(|s| path_handle(a, &s))
                .collect(),
        };
        reps.sort();
        reps
    }
}

impl LazyCarrier for Pi1Carrier {
    fn describe(&self) -> String {
        format!("dihomotopy classes of {}", self.space.describe())
    }

    fn contains(&self, x: &MonElement) -> bool {
        match x {
            MonElement::Zero => true,
            MonElement::Word(w) => self.space.path_valid(w[0], &w[1..]) && self.class_of(x) == *x,
            _ => false,
        }
    }

    fn size_of(&self, x: &MonElement) -> usize {
        path_parts(x).map_or(0, |(_, s)| s.len())
    }

    fn elements_up_to(&self, bound: usize) -> Vec<(MonElement, usize)> {
        let mut out = vec![(MonElement::Zero, 0)];
        for v in 0..self.space.vertex_count() as u32 {
            for steps in self.space.paths_from(v, bound) {
                if self.representative(v, &steps) == steps {
                    let n = steps.len();
                    out.push((path_handle(v, &steps), n));
                }
            }
        }
        out
    }

    fn finite_bound(&self) -> Option<usize> {
        self.space.max_path_length()
    }

    fn label(&self, x: &MonElement) -> String {
        match path_parts(x) {
            Some((v, s)) => format!("[{}]", self.space.label_path(v, s)),
            None => "*".into(),
        }
    }

    fn parse(&self, s: &str) -> Option<MonElement> {
        let s = s.trim();
        if s == "*" {
            return Some(MonElement::Zero);
        }
        let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
        let (v, steps) = self.space.parse_path(inner)?;
        Some(self.class_of(&path_handle(v, &steps)))
    }
}

/// The fundamental dihomotopy module: classes plus `*`, a bimodule over the
/// trace monoid. `t.[g]` is the class of `t*g` when composable, else `*`.
#[derive(Clone, Debug)]
pub struct Pi1Module {
    carrier: Arc<Pi1Carrier>,
    bimodule: Bimodule,
}

impl Pi1Module {
    pub fn new(space: &Space) -> Self {
        let carrier = Arc::new(Pi1Carrier::new(space.clone()));
        let t = trace_monoid(space);
        let set = Carrier::Set(PointedSet::lazy(carrier.clone()));
        let (c1, c2) = (carrier.clone(), carrier.clone());
        let left = LeftModule::new(t.clone(), set.clone(), move |t, g| match t {
            MonElement::One => g.clone(),
            _ => c1.class_of(&concat(c1.space(), t, g)),
        })
        .named(format!("pi1 of {}", space.describe()));
        let right = RightModule::new(t, set, move |g, t| match t {
            MonElement::One => g.clone(),
            _ => c2.class_of(&concat(c2.space(), g, t)),
        });
        let bimodule = Bimodule::new(left, right).expect("same carrier");
        Pi1Module { carrier, bimodule }
    }

    pub fn space(&self) -> &Space {
        self.carrier.space()
    }

    pub fn classes(&self) -> &Pi1Carrier {
        &self.carrier
    }

    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    pub fn left(&self) -> &LeftModule {
        &self.bimodule.left
    }

    pub fn right(&self) -> &RightModule {
        &self.bimodule.right
    }

    pub fn trace_monoid(&self) -> &AbsMonoid {
        self.bimodule.left.scalars()
    }

    /// Class handle of a path label such as `0,0:RU`.
    pub fn parse_class(&self, s: &str) -> Result<MonElement> {
        self.carrier
            .parse(s)
            .ok_or_else(|| Error::foreign(s, self.carrier.describe()))
    }

    /// Left action of a trace (given by label) on a class (given by label).
    pub fn act(&self, trace: &str, class: &str) -> Result<MonElement> {
        let t = self.trace_monoid().parse(trace)?;
        let g = self.parse_class(class)?;
        self.left().act(&t, &g)
    }

    /// For every class up to `class_bound` and every trace up to
    /// `trace_bound`, acting on each member path gives the same class on both
    /// sides. Returns the first offending `(trace, member)` pair.
    pub fn check_representative_independence(
        &self,
        class_bound: usize,
        trace_bound: usize,
    ) -> std::result::Result<u64, (String, String)> {
        let space = self.space();
        let traces = self.trace_monoid().elements_up_to(trace_bound);
        let mut checked = 0u64;
        for v in 0..space.vertex_count() as u32 {
            let mut by_class: HashMap<Vec<u32>, Vec<Vec<u32>>> = HashMap::new();
            for steps in space.paths_from(v, class_bound) {
                by_class.entry(self.carrier.representative(v, &steps)).or_default().push(steps);
            }
            let mut keys: Vec<&Vec<u32>> = by_class.keys().collect();
            keys.sort();
            for rep in keys {
                let class = path_handle(v, rep);
                for (t, _) in &traces {
                    let want_l = self.left().act_unchecked(t, &class);
                    let want_r = self.right().act_unchecked(&class, t);
                    for m in &by_class[rep] {
                        checked += 1;
                        let member = path_handle(v, m);
                        let got_l = self.carrier.class_of(&concat_or_unit(space, t, &member, true));
                        let got_r = self.carrier.class_of(&concat_or_unit(space, t, &member, false));
                        if got_l != want_l || got_r != want_r {
                            return Err((self.trace_monoid().label(t), space.label_path(v, m)));
                        }
                    }
                }
            }
        }
        Ok(checked)
    }
}

fn concat_or_unit(space: &Space, t: &MonElement, p: &MonElement, left: bool) -> MonElement {
    match t {
        MonElement::One => p.clone(),
        _ if left => concat(space, t, p),
        _ => concat(space, p, t),
    }
}
