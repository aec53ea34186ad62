use std::collections::BTreeMap;
use std::sync::Arc;

use super::ScalarChange;
use crate::absorption_monoid::{AbsMonoid, FiniteAbsMonoid, MonElement, MonoidMorphism};
use crate::error::{Error, Result};
use crate::pointed_modules::{Carrier, LeftModule, ModuleMorphism, PointedSet};

/// `l_*` of a finite module: the `T`-equivariant maps `g: T' -> M` (with
/// `T` acting on `T'` through `l`), acted on by `(t''.g)(t') = g(t' t'')`.
#[derive(Clone, Debug)]
pub struct Coextension {
    module: LeftModule,
    scalars: Arc<Vec<MonElement>>,
    /// `maps[i][k]` is the value of the `i`-th map at `scalars[k]`.
    maps: Arc<Vec<Vec<MonElement>>>,
}

impl Coextension {
    pub fn module(&self) -> &LeftModule {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    fn handle(&self, i: usize) -> MonElement {
        handle(self.module.carrier().is_mon(), i)
    }

    fn index(&self, g: &MonElement) -> Option<usize> {
        index(self.module.carrier().is_mon(), g).filter(|&i| i < self.maps.len())
    }

    /// `g(t')`.
    pub fn evaluate(&self, g: &MonElement, t: &MonElement) -> Option<MonElement> {
        let i = self.index(g)?;
        let k = self.scalars.iter().position(|x| x == t)?;
        Some(self.maps[i][k].clone())
    }

    /// The element with the given values, listed in the order of the
    /// elements of `T'`.
    pub fn element_of(&self, values: &[MonElement]) -> Option<MonElement> {
        self.maps.iter().position(|g| g == values).map(|i| self.handle(i))
    }

    /// All elements as value lists, in handle order.
    pub fn maps(&self) -> &[Vec<MonElement>] {
        &self.maps
    }
}

/// Element `i` of a coextension carrier. Monoid carriers use table handles
/// (zero map at 0, unit map at 1).
fn handle(mon: bool, i: usize) -> MonElement {
    match (mon, i) {
        (_, 0) => MonElement::Zero,
        (true, 1) => MonElement::One,
        _ => MonElement::letter(i as u32),
    }
}

fn index(mon: bool, g: &MonElement) -> Option<usize> {
    match g {
        MonElement::Zero => Some(0),
        MonElement::One if mon => Some(1),
        MonElement::Word(w) if w.len() == 1 => Some(w[0] as usize),
        _ => None,
    }
}

struct Search<'a> {
    tp: &'a [MonElement],
    ms: &'a [MonElement],
    module: &'a LeftModule,
    /// `(k, t, j)`: `tp[j] = l(t) * tp[k]`.
    shifts: Vec<(usize, MonElement, usize)>,
    /// `(a, b, c)`: `tp[c] = tp[a] * tp[b]`, monoid carriers only.
    products: Vec<(usize, usize, usize)>,
    carrier_monoid: Option<&'a AbsMonoid>,
}

impl Search<'_> {
    fn consistent(&self, g: &[Option<usize>]) -> bool {
        for (k, t, j) in &self.shifts {
            if let (Some(a), Some(b)) = (g[*k], g[*j]) {
                if self.module.act_unchecked(t, &self.ms[a]) != self.ms[b] {
                    return false;
                }
            }
        }
        if let Some(cm) = self.carrier_monoid {
            for (a, b, c) in &self.products {
                if let (Some(x), Some(y), Some(z)) = (g[*a], g[*b], g[*c]) {
                    if cm.mul(&self.ms[x], &self.ms[y]) != self.ms[z] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&self, k: usize, g: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        if k == self.tp.len() {
            out.push(g.iter().map(|x| x.unwrap()).collect());
            return;
        }
        let choices: Vec<usize> = if self.tp[k].is_zero() { vec![0] } else { (0..self.ms.len()).collect() };
        for c in choices {
            g[k] = Some(c);
            if self.consistent(g) {
                self.run(k + 1, g, out);
            }
        }
        g[k] = None;
    }
}

/// Co-extension of scalars. For a monoid carrier the maps must also be
/// multiplicative; the result has pointwise product, and construction fails
/// with [`Error::NotClosed`] when the maps are not closed under it or lack
/// the unit `t' -> 1` (`t' != 0`).
pub fn coextend(l: &ScalarChange, module: &LeftModule) -> Result<Coextension> {
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
    let tprime = l.target();
    let tp = tprime
        .elements()
        .ok_or_else(|| Error::InfiniteInput(tprime.describe()))?;
    let ms = module
        .carrier()
        .elements()
        .ok_or_else(|| Error::InfiniteInput(module.carrier().describe()))?;
    let pos = |x: &MonElement| tp.iter().position(|e| e == x).expect("closed under product");
    let mut shifts = Vec::new();
    for (k, x) in tp.iter().enumerate() {
        for t in &ts {
            shifts.push((k, t.clone(), pos(&tprime.mul(&l.apply(t), x))));
        }
    }
    let carrier_monoid = module.carrier().as_monoid();
    let mut products = Vec::new();
    if carrier_monoid.is_some() {
        for a in 0..tp.len() {
            for b in 0..tp.len() {
                products.push((a, b, pos(&tprime.mul(&tp[a], &tp[b]))));
            }
        }
    }
    let search = Search {
        tp: &tp,
        ms: &ms,
        module,
        shifts,
        products,
        carrier_monoid,
    };
    let mut found = Vec::new();
    search.run(0, &mut vec![None; tp.len()], &mut found);
    let mut maps: Vec<Vec<MonElement>> = found
        .into_iter()
        .map(|g| g.into_iter().map(|i| ms[i].clone()).collect())
        .collect();

    let zero_map: Vec<MonElement> = vec![MonElement::Zero; tp.len()];
    let render = |g: &[MonElement]| {
        format!(
            "[{}]",
            g.iter().map(|v| module.carrier().label(v)).collect::<Vec<_>>().join("|")
        )
    };
    let carrier = match carrier_monoid {
        None => {
            maps.retain(|g| *g != zero_map);
            maps.insert(0, zero_map);
            let names: Vec<String> = maps.iter().map(|g| render(g)).collect();
            Carrier::Set(PointedSet::finite(&names))
        }
        Some(cm) => {
            let one = cm.one();
            let unit_map: Vec<MonElement> = tp
                .iter()
                .map(|x| if x.is_zero() { MonElement::Zero } else { one.clone() })
                .collect();
            if !maps.contains(&zero_map) || !maps.contains(&unit_map) {
                return Err(Error::NotClosed(format!(
                    "co-extension of {} lacks {}",
                    module.name(),
                    if maps.contains(&zero_map) { render(&unit_map) } else { render(&zero_map) }
                )));
            }
            maps.retain(|g| *g != zero_map && *g != unit_map);
            maps.insert(0, zero_map);
            if unit_map != maps[0] {
                maps.insert(1, unit_map);
            }
            let n = maps.len();
            let mut table = vec![vec![0; n]; n];
            for a in 0..n {
                for b in 0..n {
                    let prod: Vec<MonElement> = maps[a].iter().zip(&maps[b]).map(|(x, y)| cm.mul(x, y)).collect();
                    table[a][b] = maps.iter().position(|g| *g == prod).ok_or_else(|| {
                        Error::NotClosed(format!(
                            "pointwise product {} * {} is not equivariant",
                            render(&maps[a]),
                            render(&maps[b])
                        ))
                    })?;
                }
            }
            let names = maps.iter().map(|g| render(g)).collect();
            let one_idx = if n > 1 { 1 } else { 0 };
            Carrier::Mon(AbsMonoid::from_table(FiniteAbsMonoid::new(names, 0, one_idx, table))?)
        }
    };

    let mon = carrier.is_mon();
    let (tp, maps) = (Arc::new(tp), Arc::new(maps));
    let (tq, tprime_act, maps_act) = (tp.clone(), tprime.clone(), maps.clone());
    let action = move |s: &MonElement, g: &MonElement| -> MonElement {
        let Some(i) = index(mon, g).filter(|&i| i < maps_act.len()) else {
            return MonElement::Zero;
        };
        let shifted: Vec<MonElement> = tq
            .iter()
            .map(|x| {
                let k = tq.iter().position(|e| *e == tprime_act.mul(x, s)).expect("closed");
                maps_act[i][k].clone()
            })
            .collect();
        maps_act
            .iter()
            .position(|h| *h == shifted)
            .map(|j| handle(mon, j))
            .unwrap_or(MonElement::Zero)
    };
    let ext = LeftModule::new(tprime.clone(), carrier, action).named(format!("co-extension of {}", module.name()));
    Ok(Coextension {
        module: ext,
        scalars: tp,
        maps,
    })
}

/// `l_*(f)`: `g -> f o g`.
pub fn coextend_map(f: &ModuleMorphism, src: &Coextension, tgt: &Coextension) -> Result<ModuleMorphism> {
    let mut images = BTreeMap::new();
    for (i, g) in src.maps.iter().enumerate() {
        let fg: Vec<MonElement> = g.iter().map(|v| f.apply(v)).collect();
        let y = tgt.element_of(&fg).ok_or_else(|| {
            Error::TypeMismatch(format!("composite of {} is not a co-extension element", src.module.carrier().label(&src.handle(i))))
        })?;
        images.insert(src.handle(i), y);
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
    use crate::scalar_functors::module_homs;

    fn z(n: usize) -> AbsMonoid {
        AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(n)).unwrap()
    }

    #[test]
    fn identity_coextension_of_regular_evaluates_onto_carrier() {
        let t = z(3);
        let reg = LeftModule::regular(&t);
        let co = coextend(&ScalarChange::identity(&t), &reg).unwrap();
        assert!(co.module().check_module_axioms(4).is_ok());
        // Elements are exactly the module maps T -> M, and evaluation at 1
        // hits every element of M once.
        assert_eq!(co.len(), module_homs(&reg, &reg).unwrap().len());
        let mut at_one: Vec<MonElement> = co
            .module()
            .carrier()
            .elements()
            .unwrap()
            .iter()
            .map(|g| co.evaluate(g, &MonElement::One).unwrap())
            .collect();
        at_one.sort();
        assert_eq!(at_one, t.elements().unwrap());
    }

    #[test]
    fn monoid_carrier_over_two_element() {
        let t = AbsMonoid::two_element();
        let m = LeftModule::trivial_action(&t, Carrier::Mon(t.clone()));
        let co = coextend(&ScalarChange::identity(&t), &m).unwrap();
        // g(0) = 0 and g(1) in {0, 1}.
        assert_eq!(co.len(), 2);
        assert!(co.module().check_module_axioms(4).is_ok());
    }

    #[test]
    fn action_composes() {
        let t = z(2);
        let m = LeftModule::trivial_action(&t, Carrier::Set(PointedSet::with_points(2)));
        let co = coextend(&ScalarChange::identity(&t), &m).unwrap();
        let els = co.module().carrier().elements().unwrap();
        for a in t.elements().unwrap() {
            for b in t.elements().unwrap() {
                for g in &els {
                    let lhs = co.module().act_unchecked(&t.mul(&a, &b), g);
                    let rhs = co.module().act_unchecked(&a, &co.module().act_unchecked(&b, g));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
