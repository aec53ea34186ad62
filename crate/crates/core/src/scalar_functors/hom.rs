use std::collections::BTreeMap;

use crate::absorption_monoid::MonElement;
use crate::error::{Error, Result};
use crate::pointed_modules::LeftModule;

/// Index-based copy of a finite module: element lists plus action (and, for
/// `Mon*` carriers, multiplication) tables.
#[derive(Clone, Debug)]
pub(crate) struct FiniteModule {
    pub scalars: Vec<MonElement>,
    /// Basepoint first.
    pub elems: Vec<MonElement>,
    pub act: Vec<Vec<usize>>,
    pub mul: Option<Vec<Vec<usize>>>,
    pub one: Option<usize>,
}

impl FiniteModule {
    pub fn new(m: &LeftModule) -> Result<Self> {
        let scalars = m
            .scalars()
            .elements()
            .ok_or_else(|| Error::InfiniteInput(m.scalars().describe()))?;
        let elems = m
            .carrier()
            .elements()
            .ok_or_else(|| Error::InfiniteInput(m.carrier().describe()))?;
        debug_assert!(elems[0].is_zero());
        let index = |x: &MonElement| {
            elems
                .iter()
                .position(|e| e == x)
                .ok_or_else(|| Error::foreign(format!("{x:?}"), m.carrier().describe()))
        };
        let act = scalars
            .iter()
            .map(|t| elems.iter().map(|x| index(&m.act_unchecked(t, x))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let (mul, one) = match m.carrier().as_monoid() {
            Some(cm) => (
                Some(
                    elems
                        .iter()
                        .map(|a| elems.iter().map(|b| index(&cm.mul(a, b))).collect::<Result<Vec<_>>>())
                        .collect::<Result<Vec<_>>>()?,
                ),
                Some(index(&cm.one())?),
            ),
            None => (None, None),
        };
        Ok(FiniteModule {
            scalars,
            elems,
            act,
            mul,
            one,
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }
}

/// Whether the partial assignment `f` (with `usize::MAX` for unassigned)
/// violates any law between assigned elements.
fn consistent(a: &FiniteModule, b: &FiniteModule, f: &[usize]) -> bool {
    const NONE: usize = usize::MAX;
    for t in 0..a.scalars.len() {
        for x in 0..a.len() {
            let fx = f[x];
            if fx == NONE {
                continue;
            }
            let y = a.act[t][x];
            if f[y] != NONE && f[y] != b.act[t][fx] {
                return false;
            }
        }
    }
    if let (Some(ma), Some(mb)) = (&a.mul, &b.mul) {
        let (oa, ob) = (a.one.unwrap(), b.one.unwrap());
        if f[oa] != NONE && f[oa] != ob {
            return false;
        }
        for x in 0..a.len() {
            for y in 0..a.len() {
                if f[x] == NONE || f[y] == NONE {
                    continue;
                }
                let z = ma[x][y];
                if f[z] != NONE && f[z] != mb[f[x]][f[y]] {
                    return false;
                }
            }
        }
    }
    true
}

/// All module morphisms `a -> b` over the same scalars with the identity on
/// scalars, as index vectors (`f[i]` is the image of `a.elems[i]`).
pub(crate) fn enumerate_homs(a: &FiniteModule, b: &FiniteModule) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut f = vec![usize::MAX; a.len()];
    f[0] = 0;
    fn go(k: usize, a: &FiniteModule, b: &FiniteModule, f: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == a.len() {
            out.push(f.clone());
            return;
        }
        for y in 0..b.len() {
            f[k] = y;
            if consistent(a, b, f) {
                go(k + 1, a, b, f, out);
            }
        }
        f[k] = usize::MAX;
    }
    if consistent(a, b, &f) {
        go(1, a, b, &mut f, &mut out);
    }
    out
}

/// Brute-force `Hom(a, b)` for finite modules over the same scalar monoid:
/// every basepoint-preserving (and, for `Mon*`, multiplicative and unital)
/// carrier map commuting with the actions.
pub fn module_homs(a: &LeftModule, b: &LeftModule) -> Result<Vec<BTreeMap<MonElement, MonElement>>> {
    if a.scalars() != b.scalars() {
        return Err(Error::ScalarMismatch {
            expected: a.scalars().describe(),
            found: b.scalars().describe(),
        });
    }
    if a.carrier().is_mon() != b.carrier().is_mon() {
        return Err(Error::TypeMismatch("Set* and Mon* modules".into()));
    }
    let (fa, fb) = (FiniteModule::new(a)?, FiniteModule::new(b)?);
    Ok(enumerate_homs(&fa, &fb)
        .into_iter()
        .map(|f| {
            f.iter()
                .enumerate()
                .map(|(i, &j)| (fa.elems[i].clone(), fb.elems[j].clone()))
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorption_monoid::{AbsMonoid, FiniteAbsMonoid};
    use crate::pointed_modules::{Carrier, PointedSet};

    #[test]
    fn homs_between_trivial_modules() {
        let t = AbsMonoid::two_element();
        let a = LeftModule::trivial_action(&t, Carrier::Set(PointedSet::with_points(1)));
        let b = LeftModule::trivial_action(&t, Carrier::Set(PointedSet::with_points(2)));
        // s1 may go anywhere.
        assert_eq!(module_homs(&a, &b).unwrap().len(), 3);
    }

    #[test]
    fn homs_out_of_the_regular_module() {
        // Hom(T, M) ≅ M for the regular Set* module: f is fixed by f(1).
        let t = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(2)).unwrap();
        let reg = LeftModule::regular(&t);
        assert_eq!(module_homs(&reg, &reg).unwrap().len(), 3);
    }

    #[test]
    fn mon_homs_are_unital() {
        let t = AbsMonoid::two_element();
        let z2 = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(2)).unwrap();
        let m = LeftModule::trivial_action(&t, Carrier::Mon(z2));
        // Identity, and g -> 1 (the trivial group map).
        assert_eq!(module_homs(&m, &m).unwrap().len(), 2);
    }
}
