use std::collections::BTreeMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::ScalarChange;
use crate::absorption_monoid::{AbsMonoid, MonElement, MonoidMorphism};
use crate::error::{Error, Result};
use crate::pointed_modules::{Carrier, LeftModule, ModuleMorphism, PointedSet};

/// Finite element lists of `T'` (nonzero part) and a carrier (non-basepoint
/// part), with index lookup.
#[derive(Clone, Debug)]
pub(crate) struct PairSpace {
    pub tp: Vec<MonElement>,
    pub ms: Vec<MonElement>,
}

impl PairSpace {
    pub fn new(tprime: &AbsMonoid, carrier: &Carrier) -> Result<Self> {
        let tp = tprime
            .elements()
            .ok_or_else(|| Error::InfiniteInput(tprime.describe()))?
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect();
        let ms = carrier
            .elements()
            .ok_or_else(|| Error::InfiniteInput(carrier.describe()))?
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect();
        Ok(PairSpace { tp, ms })
    }

    pub fn len(&self) -> usize {
        self.tp.len() * self.ms.len()
    }

    /// Node of `(t', m)`, or `None` when either component is zero.
    pub fn node(&self, t: &MonElement, m: &MonElement) -> Option<usize> {
        let i = self.tp.iter().position(|x| x == t)?;
        let j = self.ms.iter().position(|x| x == m)?;
        Some(i * self.ms.len() + j)
    }

    pub fn pair(&self, node: usize) -> (&MonElement, &MonElement) {
        (&self.tp[node / self.ms.len()], &self.ms[node % self.ms.len()])
    }
}

/// `l_!` of a pointed-set module: classes `<t', s>` of pairs with `t' != 0`
/// and `s != *`, modulo `<t', t.s> = <t' l(t), s>`, plus the basepoint.
#[derive(Clone, Debug)]
pub struct SetExtension {
    module: LeftModule,
    pairs: PairSpace,
    /// Class of each pair node; `0` is the basepoint.
    class: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl SetExtension {
    /// The extended module over `T'`.
    pub fn module(&self) -> &LeftModule {
        &self.module
    }

    /// Number of classes other than the basepoint.
    pub fn class_count(&self) -> usize {
        self.members.len() - 1
    }

    /// `<t', m>` as an element of the extension.
    pub fn class_of(&self, t: &MonElement, m: &MonElement) -> MonElement {
        match self.pairs.node(t, m) {
            Some(n) => PointedSet::point(self.class[n]),
            None => MonElement::Zero,
        }
    }

    /// `<1, m>`.
    pub fn unit(&self, m: &MonElement) -> MonElement {
        self.class_of(&MonElement::One, m)
    }

    /// Pairs in the class `c`; empty for the basepoint.
    pub fn members(&self, c: &MonElement) -> Vec<(MonElement, MonElement)> {
        let idx = match c {
            MonElement::Word(w) if w.len() == 1 => w[0] as usize,
            _ => return Vec::new(),
        };
        self.members.get(idx).into_iter().flatten().map(|&n| {
            let (t, m) = self.pairs.pair(n);
            (t.clone(), m.clone())
        })
        .collect()
    }

    /// Lexicographically least member (by `(t' index, m index)`).
    pub fn representative(&self, c: &MonElement) -> Option<(MonElement, MonElement)> {
        self.members(c).into_iter().next()
    }
}

/// Extension of scalars for a module with a pointed-set carrier (a monoid
/// carrier is used through its underlying pointed set).
pub fn extend_set(l: &ScalarChange, module: &LeftModule) -> Result<SetExtension> {
    if module.scalars() != l.source() {
        return Err(Error::ScalarMismatch {
            expected: l.source().describe(),
            found: module.scalars().describe(),
        });
    }
    let ts = l
        .source()
        .elements()
        .ok_or_else(|| Error::InfiniteInput(l.source().describe()))?;
    let tprime = l.target().clone();
    let pairs = PairSpace::new(&tprime, module.carrier())?;
    let lt: Vec<MonElement> = ts.iter().map(|t| l.apply(t)).collect();

    // Node `n` is the pair `n`; the last node stands for the basepoint.
    let star = pairs.len();
    let node = |t: &MonElement, m: &MonElement| pairs.node(t, m).unwrap_or(star);
    let mut uf = UnionFind::<usize>::new(star + 1);
    for n in 0..star {
        let (tp, m) = pairs.pair(n);
        for (t, img) in ts.iter().zip(&lt) {
            // <t', t.m> ~ <t' l(t), m>
            let lhs = node(tp, &module.act_unchecked(t, m));
            let rhs = node(&tprime.mul(tp, img), m);
            uf.union(lhs, rhs);
        }
    }

    let mut class = vec![usize::MAX; star];
    let mut members: Vec<Vec<usize>> = vec![Vec::new()];
    let mut root_class = BTreeMap::from([(uf.find(star), 0usize)]);
    for n in 0..star {
        let next = members.len();
        let c = *root_class.entry(uf.find(n)).or_insert(next);
        if c == members.len() {
            members.push(Vec::new());
        }
        if c != 0 {
            members[c].push(n);
        }
        class[n] = c;
    }

    let carrier_label = |m: &MonElement| module.carrier().label(m);
    let mut names = vec!["*".to_string()];
    for ms in &members[1..] {
        let (t, m) = pairs.pair(ms[0]);
        names.push(format!("<{},{}>", tprime.label(t), carrier_label(m)));
    }
    let carrier = PointedSet::finite(&names);

    let (p, cl, mem) = (Arc::new(pairs.clone()), Arc::new(class.clone()), Arc::new(members.clone()));
    let tq = tprime.clone();
    let action = move |s: &MonElement, c: &MonElement| -> MonElement {
        let idx = match c {
            MonElement::Word(w) if w.len() == 1 => w[0] as usize,
            _ => return MonElement::Zero,
        };
        let (t, m) = p.pair(mem[idx][0]);
        match p.node(&tq.mul(s, t), m) {
            Some(n) => PointedSet::point(cl[n]),
            None => MonElement::Zero,
        }
    };
    let ext = LeftModule::new(tprime, Carrier::Set(carrier), action)
        .named(format!("extension of {}", module.name()));
    Ok(SetExtension {
        module: ext,
        pairs,
        class,
        members,
    })
}

/// `l_!(f)`: `<t', m> -> <t', f(m)>`, between extensions of the source and
/// target of `f`.
pub fn extend_set_map(f: &ModuleMorphism, src: &SetExtension, tgt: &SetExtension) -> Result<ModuleMorphism> {
    let mut images = BTreeMap::from([(MonElement::Zero, MonElement::Zero)]);
    for c in 1..src.members.len() {
        let e = PointedSet::point(c);
        let mut image = None;
        for (t, m) in src.members(&e) {
            let y = tgt.class_of(&t, &f.apply(&m));
            match &image {
                None => image = Some(y),
                Some(prev) if *prev != y => {
                    return Err(Error::TypeMismatch(format!(
                        "extended map is not well defined on {}",
                        src.module.carrier().label(&e)
                    )))
                }
                _ => {}
            }
        }
        images.insert(e, image.unwrap_or(MonElement::Zero));
    }
    let images = Arc::new(images);
    ModuleMorphism::new(
        src.module.clone(),
        tgt.module.clone(),
        move |x| images.get(x).cloned().unwrap_or(MonElement::Zero),
        MonoidMorphism::identity(src.module.scalars()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorption_monoid::FiniteAbsMonoid;
    use crate::pointed_modules::find_module_isomorphism;

    fn z(n: usize) -> AbsMonoid {
        AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(n)).unwrap()
    }

    #[test]
    fn identity_extension_of_regular_is_regular() {
        let t = z(3);
        let ext = extend_set(&ScalarChange::identity(&t), &LeftModule::regular(&t)).unwrap();
        assert!(ext.module().check_module_axioms(4).is_ok());
        assert!(find_module_isomorphism(ext.module(), &LeftModule::regular(&t)).is_some());
    }

    #[test]
    fn trivial_action_over_two_element() {
        // S = {*, s}, T = {0,1}, l the unit inclusion into Z/3 with zero.
        let t = AbsMonoid::two_element();
        let inc = MonoidMorphism::from_table(
            t.clone(),
            z(3),
            BTreeMap::from([(MonElement::Zero, MonElement::Zero), (MonElement::One, MonElement::One)]),
        )
        .unwrap();
        let l = ScalarChange::new(inc, 4).unwrap();
        let m = LeftModule::trivial_action(&t, Carrier::Set(PointedSet::with_points(1)));
        let ext = extend_set(&l, &m).unwrap();
        assert_eq!(ext.class_count(), 3);
        assert!(ext.module().check_module_axioms(4).is_ok());
    }

    #[test]
    fn zero_scalar_kills_every_class() {
        let t = z(2);
        let ext = extend_set(&ScalarChange::identity(&t), &LeftModule::regular(&t)).unwrap();
        for c in ext.module().carrier().elements().unwrap() {
            assert!(ext.module().act_unchecked(&MonElement::Zero, &c).is_zero());
        }
    }
}
