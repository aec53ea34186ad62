use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::PointedSet;
use crate::absorption_monoid::{AbsMonoid, AxiomReport, Law, MonElement};
use crate::error::{Error, Result};

/// `(t, m) -> t.m`, evaluated on handles.
pub type ActionFn = Arc<dyn Fn(&MonElement, &MonElement) -> MonElement + Send + Sync>;

/// Underlying object of a module: a pointed set or an absorption monoid.
#[derive(Clone, Debug, PartialEq)]
pub enum Carrier {
    Set(PointedSet),
    Mon(AbsMonoid),
}

impl Carrier {
    pub fn describe(&self) -> String {
        match self {
            Carrier::Set(s) => s.describe(),
            Carrier::Mon(m) => m.describe(),
        }
    }

    pub fn is_mon(&self) -> bool {
        matches!(self, Carrier::Mon(_))
    }

    pub fn as_monoid(&self) -> Option<&AbsMonoid> {
        match self {
            Carrier::Mon(m) => Some(m),
            Carrier::Set(_) => None,
        }
    }

    /// The carrier viewed as a pointed set.
    pub fn pointed_set(&self) -> PointedSet {
        match self {
            Carrier::Set(s) => s.clone(),
            Carrier::Mon(m) => PointedSet::of_monoid(m),
        }
    }

    pub fn contains(&self, x: &MonElement) -> bool {
        match self {
            Carrier::Set(s) => s.contains(x),
            Carrier::Mon(m) => m.contains(x),
        }
    }

    pub fn size_of(&self, x: &MonElement) -> usize {
        match self {
            Carrier::Set(s) => s.size_of(x),
            Carrier::Mon(m) => m.size_of(x),
        }
    }

    pub fn finite_bound(&self) -> Option<usize> {
        match self {
            Carrier::Set(s) => s.finite_bound(),
            Carrier::Mon(m) => m.finite_bound(),
        }
    }

    pub fn elements(&self) -> Option<Vec<MonElement>> {
        match self {
            Carrier::Set(s) => s.elements(),
            Carrier::Mon(m) => m.elements(),
        }
    }

    pub fn elements_up_to(&self, bound: usize) -> Vec<(MonElement, usize)> {
        match self {
            Carrier::Set(s) => s.elements_up_to(bound),
            Carrier::Mon(m) => m.elements_up_to(bound),
        }
    }

    pub fn check_domain(&self, bound: usize) -> (Vec<(MonElement, usize)>, Option<usize>) {
        match self {
            Carrier::Set(s) => s.check_domain(bound),
            Carrier::Mon(m) => m.check_domain(bound),
        }
    }

    pub fn label(&self, x: &MonElement) -> String {
        match self {
            Carrier::Set(s) => s.label(x),
            Carrier::Mon(m) => m.label(x),
        }
    }

    pub fn parse(&self, s: &str) -> Result<MonElement> {
        match self {
            Carrier::Set(p) => p.parse(s).ok_or_else(|| Error::foreign(s, p.describe())),
            Carrier::Mon(m) => m.parse(s),
        }
    }
}

/// A left module over an absorption monoid, with a pointed-set carrier
/// (`Set*`) or an absorption-monoid carrier (`Mon*`). The action is an
/// evaluable map; [`LeftModule::check_module_axioms`] verifies the laws.
#[derive(Clone)]
pub struct LeftModule {
    scalars: AbsMonoid,
    carrier: Carrier,
    action: ActionFn,
    name: String,
}

impl fmt::Debug for LeftModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeftModule({})", self.name)
    }
}

impl LeftModule {
    pub fn new(
        scalars: AbsMonoid,
        carrier: Carrier,
        action: impl Fn(&MonElement, &MonElement) -> MonElement + Send + Sync + 'static,
    ) -> Self {
        Self::from_arc(scalars, carrier, Arc::new(action))
    }

    pub fn from_arc(scalars: AbsMonoid, carrier: Carrier, action: ActionFn) -> Self {
        let name = format!("module {} over {}", carrier.describe(), scalars.describe());
        LeftModule {
            scalars,
            carrier,
            action,
            name,
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn scalars(&self) -> &AbsMonoid {
        &self.scalars
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn action(&self) -> &ActionFn {
        &self.action
    }

    /// `T` acting on its own underlying pointed set by left multiplication.
    pub fn regular(t: &AbsMonoid) -> Self {
        let tm = t.clone();
        Self::new(t.clone(), Carrier::Set(PointedSet::of_monoid(t)), move |a, b| tm.mul(a, b))
            .named(format!("regular action of {}", t.describe()))
    }

    /// `t.s = s` for `t != 0` and `0.s = *`.
    pub fn trivial_action(t: &AbsMonoid, carrier: Carrier) -> Self {
        Self::new(t.clone(), carrier, |t, s| if t.is_zero() { MonElement::Zero } else { s.clone() })
    }

    /// Finite action given as a full table `(t, m) -> t.m`.
    pub fn from_table(
        scalars: AbsMonoid,
        carrier: Carrier,
        images: BTreeMap<(MonElement, MonElement), MonElement>,
    ) -> Result<Self> {
        let ts = scalars
            .elements()
            .ok_or_else(|| Error::InfiniteInput(scalars.describe()))?;
        let ms = carrier
            .elements()
            .ok_or_else(|| Error::InfiniteInput(carrier.describe()))?;
        for t in &ts {
            for m in &ms {
                let img = images.get(&(t.clone(), m.clone())).ok_or_else(|| {
                    Error::TypeMismatch(format!(
                        "no image for {} . {}",
                        scalars.label(t),
                        carrier.label(m)
                    ))
                })?;
                if !carrier.contains(img) {
                    return Err(Error::foreign(format!("{img:?}"), carrier.describe()));
                }
            }
        }
        let images = Arc::new(images);
        Ok(Self::new(scalars, carrier, move |t, m| images[&(t.clone(), m.clone())].clone()))
    }

    /// `t.m`, after checking that both belong to this module.
    pub fn act(&self, t: &MonElement, m: &MonElement) -> Result<MonElement> {
        if !self.scalars.contains(t) {
            return Err(Error::foreign(format!("{t:?}"), self.scalars.describe()));
        }
        if !self.carrier.contains(m) {
            return Err(Error::foreign(format!("{m:?}"), self.carrier.describe()));
        }
        Ok(self.act_unchecked(t, m))
    }

    pub fn act_unchecked(&self, t: &MonElement, m: &MonElement) -> MonElement {
        (self.action)(t, m)
    }

    /// Same carrier, scalars and action, with the carrier seen as a pointed
    /// set.
    pub fn forget_monoid(&self) -> LeftModule {
        LeftModule {
            carrier: Carrier::Set(self.carrier.pointed_set()),
            ..self.clone()
        }
    }

    /// Check the module bullets: composition, unit, zero scalar, fixed
    /// basepoint, and (for `Mon*` carriers) distributivity over the carrier
    /// product. Exhaustive when scalars and carrier are small and finite,
    /// otherwise over instances of total size at most `bound`.
    pub fn check_module_axioms(&self, bound: usize) -> AxiomReport {
        let (dt, st) = self.scalars.check_domain(bound);
        let (dm, sm) = self.carrier.check_domain(bound);
        let exhaustive = st.is_none() && sm.is_none();
        let scope = if exhaustive { None } else { Some(bound) };
        let fits = |s: usize| exhaustive || s <= bound;
        let mut report = AxiomReport::new(self.name.clone(), scope);
        let (t_lab, m_lab) = (|x: &MonElement| self.scalars.label(x), |x: &MonElement| self.carrier.label(x));

        // Images must land in the carrier before anything else is evaluated.
        for (t, st) in &dt {
            for (m, _) in dm.iter().filter(|(_, s)| fits(st + s)) {
                report.checked += 1;
                let img = self.act_unchecked(t, m);
                if !self.carrier.contains(&img) {
                    report.violation(Law::ForeignImage, vec![t_lab(t), m_lab(m)], format!("{img:?}"));
                }
            }
        }
        if !report.is_ok() {
            return report.finish();
        }

        let one = self.scalars.one();
        for (m, _) in &dm {
            report.checked += 2;
            let u = self.act_unchecked(&one, m);
            if u != *m {
                report.violation(Law::ActionUnit, vec![m_lab(m)], format!("1.m = {}", m_lab(&u)));
            }
            let z = self.act_unchecked(&MonElement::Zero, m);
            if !z.is_zero() {
                report.violation(Law::ZeroScalar, vec![m_lab(m)], format!("0.m = {}", m_lab(&z)));
            }
        }

        let carrier_monoid = self.carrier.as_monoid();
        let per_t: Vec<AxiomReport> = dt
            .par_iter()
            .map(|(t, s1)| {
                let mut r = AxiomReport::default();
                r.checked += 1;
                let fixed = self.act_unchecked(t, &MonElement::Zero);
                if !fixed.is_zero() {
                    r.violation(Law::BasepointFixed, vec![t_lab(t)], format!("t.* = {}", m_lab(&fixed)));
                }
                for (t2, s2) in dt.iter().filter(|(_, s)| fits(s1 + s)) {
                    let tt = self.scalars.mul(t, t2);
                    for (m, _) in dm.iter().filter(|(_, s)| fits(s1 + s2 + s)) {
                        r.checked += 1;
                        let lhs = self.act_unchecked(&tt, m);
                        let rhs = self.act_unchecked(t, &self.act_unchecked(t2, m));
                        if lhs != rhs {
                            r.violation(
                                Law::ActionComposition,
                                vec![t_lab(t), t_lab(t2), m_lab(m)],
                                format!("{} != {}", m_lab(&lhs), m_lab(&rhs)),
                            );
                        }
                    }
                }
                if let Some(cm) = carrier_monoid {
                    for (m, s2) in dm.iter().filter(|(_, s)| fits(s1 + s)) {
                        let tm = self.act_unchecked(t, m);
                        for (m2, _) in dm.iter().filter(|(_, s)| fits(s1 + s2 + s)) {
                            r.checked += 1;
                            let lhs = self.act_unchecked(t, &cm.mul(m, m2));
                            let rhs = cm.mul(&tm, &self.act_unchecked(t, m2));
                            if lhs != rhs {
                                r.violation(
                                    Law::ActionDistributes,
                                    vec![t_lab(t), m_lab(m), m_lab(m2)],
                                    format!("{} != {}", m_lab(&lhs), m_lab(&rhs)),
                                );
                            }
                        }
                    }
                }
                r
            })
            .collect();
        for r in per_t {
            report.checked += r.checked;
            report.violations.extend(r.violations);
        }
        report.finish()
    }
}

/// A right module, stored as a left module over the opposite scalars.
#[derive(Clone, Debug)]
pub struct RightModule {
    inner: LeftModule,
}

impl RightModule {
    /// `action(m, t) = m.t`.
    pub fn new(
        scalars: AbsMonoid,
        carrier: Carrier,
        action: impl Fn(&MonElement, &MonElement) -> MonElement + Send + Sync + 'static,
    ) -> Self {
        let name = format!("right module {} over {}", carrier.describe(), scalars.describe());
        let inner = LeftModule::new(scalars.opposite(), carrier, move |t, m| action(m, t)).named(name);
        RightModule { inner }
    }

    /// Reinterpret a left module over `T^op` as a right module over `T`.
    pub fn from_opposite(left: LeftModule) -> Self {
        RightModule { inner: left }
    }

    pub fn scalars(&self) -> AbsMonoid {
        self.inner.scalars.opposite()
    }

    pub fn carrier(&self) -> &Carrier {
        &self.inner.carrier
    }

    pub fn as_left_of_opposite(&self) -> &LeftModule {
        &self.inner
    }

    pub fn act(&self, m: &MonElement, t: &MonElement) -> Result<MonElement> {
        self.inner.act(t, m)
    }

    pub fn act_unchecked(&self, m: &MonElement, t: &MonElement) -> MonElement {
        self.inner.act_unchecked(t, m)
    }

    /// Module bullets for the right action: `m.(t*t') = (m.t).t'`, `m.1 = m`,
    /// `m.0 = * = *.t`.
    pub fn check_module_axioms(&self, bound: usize) -> AxiomReport {
        self.inner.check_module_axioms(bound)
    }
}

/// Left and right actions on one carrier.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub left: LeftModule,
    pub right: RightModule,
}

impl Bimodule {
    pub fn new(left: LeftModule, right: RightModule) -> Result<Self> {
        if left.carrier() != right.carrier() {
            return Err(Error::TypeMismatch(format!(
                "left carrier {} differs from right carrier {}",
                left.carrier().describe(),
                right.carrier().describe()
            )));
        }
        Ok(Bimodule { left, right })
    }

    /// Both module checks plus `(t.m).t' = t.(m.t')`.
    pub fn check_axioms(&self, bound: usize) -> AxiomReport {
        let mut report = self.left.check_module_axioms(bound);
        report.absorb(self.right.check_module_axioms(bound));
        report.subject = format!("bimodule {}", self.left.carrier().describe());
        if !report.is_ok() {
            return report.finish();
        }
        let (dl, sl) = self.left.scalars().check_domain(bound);
        let rs = self.right.scalars();
        let (dr, sr) = rs.check_domain(bound);
        let carrier = self.left.carrier();
        let (dm, sm) = carrier.check_domain(bound);
        let exhaustive = sl.is_none() && sr.is_none() && sm.is_none();
        let fits = |s: usize| exhaustive || s <= bound;
        let per_t: Vec<AxiomReport> = dl
            .par_iter()
            .map(|(t, s1)| {
                let mut r = AxiomReport::default();
                for (m, s2) in dm.iter().filter(|(_, s)| fits(s1 + s)) {
                    let tm = self.left.act_unchecked(t, m);
                    for (t2, _) in dr.iter().filter(|(_, s)| fits(s1 + s2 + s)) {
                        r.checked += 1;
                        let lhs = self.right.act_unchecked(&tm, t2);
                        let rhs = self.left.act_unchecked(t, &self.right.act_unchecked(m, t2));
                        if lhs != rhs {
                            r.violation(
                                Law::BimoduleCompatibility,
                                vec![self.left.scalars().label(t), carrier.label(m), rs.label(t2)],
                                format!("{} != {}", carrier.label(&lhs), carrier.label(&rhs)),
                            );
                        }
                    }
                }
                r
            })
            .collect();
        for r in per_t {
            report.checked += r.checked;
            report.violations.extend(r.violations);
        }
        report.finish()
    }
}

/// A carrier bijection between two finite modules over the same scalars that
/// fixes the basepoint and commutes with the actions (and, for `Mon*`
/// carriers, with multiplication). Returned as `a`-element to `b`-element.
pub fn find_module_isomorphism(a: &LeftModule, b: &LeftModule) -> Option<BTreeMap<MonElement, MonElement>> {
    let ts = a.scalars().elements()?;
    if b.scalars().elements()? != ts {
        return None;
    }
    let xs = a.carrier().elements()?;
    let ys = b.carrier().elements()?;
    if xs.len() != ys.len() || a.carrier().is_mon() != b.carrier().is_mon() {
        return None;
    }
    let ix = |v: &[MonElement], e: &MonElement| v.iter().position(|y| y == e).expect("closed action");
    let act_a: Vec<Vec<usize>> = ts
        .iter()
        .map(|t| xs.iter().map(|m| ix(&xs, &a.act_unchecked(t, m))).collect())
        .collect();
    let act_b: Vec<Vec<usize>> = ts
        .iter()
        .map(|t| ys.iter().map(|m| ix(&ys, &b.act_unchecked(t, m))).collect())
        .collect();
    let mul_tables = match (a.carrier().as_monoid(), b.carrier().as_monoid()) {
        (Some(ma), Some(mb)) => Some((
            xs.iter()
                .map(|p| xs.iter().map(|q| ix(&xs, &ma.mul(p, q))).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            ys.iter()
                .map(|p| ys.iter().map(|q| ix(&ys, &mb.mul(p, q))).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )),
        _ => None,
    };
    let n = xs.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // Basepoint is first in both sorted element lists.
    map[0] = 0;
    used[0] = true;
    fn consistent(
        map: &[usize],
        act_a: &[Vec<usize>],
        act_b: &[Vec<usize>],
        mul: &Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
    ) -> bool {
        let n = map.len();
        for (ta, tb) in act_a.iter().zip(act_b) {
            for x in 0..n {
                if map[x] == usize::MAX {
                    continue;
                }
                let y = ta[x];
                if map[y] != usize::MAX && map[y] != tb[map[x]] {
                    return false;
                }
            }
        }
        if let Some((ma, mb)) = mul {
            for p in 0..n {
                for q in 0..n {
                    if map[p] == usize::MAX || map[q] == usize::MAX {
                        continue;
                    }
                    let r = ma[p][q];
                    if map[r] != usize::MAX && map[r] != mb[map[p]][map[q]] {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        act_a: &[Vec<usize>],
        act_b: &[Vec<usize>],
        mul: &Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>,
    ) -> bool {
        let n = map.len();
        if k == n {
            return true;
        }
        for y in 0..n {
            if used[y] {
                continue;
            }
            map[k] = y;
            used[y] = true;
            if consistent(map, act_a, act_b, mul) && go(k + 1, map, used, act_a, act_b, mul) {
                return true;
            }
            used[y] = false;
            map[k] = usize::MAX;
        }
        false
    }
    if !consistent(&map, &act_a, &act_b, &mul_tables) || !go(1, &mut map, &mut used, &act_a, &act_b, &mul_tables) {
        return None;
    }
    Some(
        map.iter()
            .enumerate()
            .map(|(i, &j)| (xs[i].clone(), ys[j].clone()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FiniteAbsMonoid;

    #[test]
    fn regular_action_is_a_set_module() {
        for n in 2..=4 {
            for t in crate::absorption_monoid::all_table_monoids(n) {
                let t = AbsMonoid::from_table(t).unwrap();
                let r = LeftModule::regular(&t).check_module_axioms(0);
                assert!(r.is_ok(), "{r}");
            }
        }
    }

    #[test]
    fn trivial_action_over_two_element() {
        let t = AbsMonoid::two_element();
        let m = LeftModule::trivial_action(&t, Carrier::Set(PointedSet::with_points(2)));
        assert!(m.check_module_axioms(0).is_ok());
    }

    #[test]
    fn planted_composition_violation() {
        let z2 = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(2)).unwrap();
        // g sends both points to s2, so g.(g.s1) = s2 but (g*g).s1 = 1.s1 = s1.
        let g = z2.parse("g").unwrap();
        let s2 = PointedSet::point(2);
        let gg = g.clone();
        let m = LeftModule::new(z2, Carrier::Set(PointedSet::with_points(2)), move |t, s| {
            if t.is_zero() || s.is_zero() {
                MonElement::Zero
            } else if *t == gg {
                s2.clone()
            } else {
                s.clone()
            }
        });
        let r = m.check_module_axioms(0);
        assert!(r.violates(Law::ActionComposition));
        assert!(r.violations.iter().any(|v| v.witnesses == vec!["g", "g", "s1"]));
    }

    #[test]
    fn right_regular_and_bimodule() {
        let free = AbsMonoid::free(&["a", "b"]);
        let (f1, f2) = (free.clone(), free.clone());
        let carrier = Carrier::Set(PointedSet::of_monoid(&free));
        let left = LeftModule::new(free.clone(), carrier.clone(), move |t, m| f1.mul(t, m));
        let right = RightModule::new(free.clone(), carrier, move |m, t| f2.mul(m, t));
        let bi = Bimodule::new(left, right).unwrap();
        let r = bi.check_axioms(5);
        assert!(r.is_ok(), "{r}");
        assert_eq!(r.bound, Some(5));
    }

    #[test]
    fn isomorphism_of_relabelled_modules() {
        let t = AbsMonoid::two_element();
        let a = LeftModule::trivial_action(&t, Carrier::Set(PointedSet::with_points(2)));
        let b = LeftModule::trivial_action(&t, Carrier::Set(PointedSet::finite(&["*", "x", "y"])));
        assert!(find_module_isomorphism(&a, &b).is_some());
        let c = LeftModule::trivial_action(&t, Carrier::Set(PointedSet::with_points(3)));
        assert!(find_module_isomorphism(&a, &c).is_none());
    }
}
