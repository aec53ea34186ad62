use std::collections::BTreeSet;

use super::{AbsMonoid, MonElement};
use crate::error::{Error, Result};

/// A sub-absorption monoid given by generators. Only the generators are
/// stored; the elements are their products (and `0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubMonoid {
    generators: Vec<MonElement>,
}

impl SubMonoid {
    /// `{0}`.
    pub fn zero() -> Self {
        SubMonoid { generators: vec![] }
    }

    /// The sub-monoid generated by `gens`, which must be elements of `m`.
    pub fn generated_by(m: &AbsMonoid, gens: Vec<MonElement>) -> Result<Self> {
        for g in &gens {
            if !m.contains(g) {
                return Err(Error::foreign(m.label(g), m.describe()));
            }
        }
        let mut generators: Vec<MonElement> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        generators.sort();
        generators.dedup();
        Ok(SubMonoid { generators })
    }

    /// Take an explicit element set, refusing it unless it is closed under
    /// the multiplication of `m`. `0` is added if missing.
    pub fn from_elements(m: &AbsMonoid, elements: Vec<MonElement>) -> Result<Self> {
        let mut set: BTreeSet<MonElement> = elements.iter().cloned().collect();
        set.insert(MonElement::Zero);
        for a in &set {
            if !m.contains(a) {
                return Err(Error::foreign(m.label(a), m.describe()));
            }
        }
        for a in &set {
            for b in &set {
                let p = m.mul(a, b);
                if !set.contains(&p) {
                    return Err(Error::NotASubmonoid(format!(
                        "{} * {} = {} is missing",
                        m.label(a),
                        m.label(b),
                        m.label(&p)
                    )));
                }
            }
        }
        Self::generated_by(m, elements)
    }

    pub fn generators(&self) -> &[MonElement] {
        &self.generators
    }

    /// Elements of the sub-monoid in `m`, up to size `bound` for infinite `m`.
    pub fn elements(&self, m: &AbsMonoid, bound: usize) -> BTreeSet<MonElement> {
        m.closure(&self.generators, bound)
    }

    /// Whether `x` lies in the two-sided ideal generated by the sub-monoid,
    /// i.e. `x = a*n*b` for some `n` in it. These are the elements the
    /// quotient sends to zero.
    pub fn ideal_contains(&self, m: &AbsMonoid, x: &MonElement) -> bool {
        x.is_zero() || self.generators.iter().any(|g| m.divides(g, x))
    }
}

/// Every sub-absorption monoid of a small finite monoid, as explicit element
/// sets (so two entries never describe the same subset).
pub fn all_submonoids(m: &AbsMonoid) -> Result<Vec<SubMonoid>> {
    let elems = m
        .elements()
        .ok_or_else(|| Error::InfiniteInput(m.describe()))?;
    let rest: Vec<MonElement> = elems.into_iter().filter(|x| !x.is_zero()).collect();
    if rest.len() > 16 {
        return Err(Error::InfiniteInput(format!("{} has too many elements", m.describe())));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << rest.len()) {
        let subset: Vec<MonElement> = rest
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, x)| x.clone())
            .collect();
        if let Ok(s) = SubMonoid::from_elements(m, subset) {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FiniteAbsMonoid;

    #[test]
    fn closure_failure_is_reported() {
        let free = AbsMonoid::free(&["a"]);
        let err = SubMonoid::from_elements(&free, vec![MonElement::letter(0)]).unwrap_err();
        assert!(matches!(err, Error::NotASubmonoid(_)));
    }

    #[test]
    fn submonoids_of_two_element() {
        let two = AbsMonoid::from_table(FiniteAbsMonoid::two_element()).unwrap();
        assert_eq!(all_submonoids(&two).unwrap().len(), 2);
    }

    #[test]
    fn quotient_by_zero_is_identity() {
        let z3 = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(3)).unwrap();
        let q = z3.quotient(SubMonoid::zero()).unwrap();
        assert!(q.to_table().unwrap().is_isomorphic(z3.as_table().unwrap()));
    }

    #[test]
    fn quotient_of_free_by_ab() {
        let free = AbsMonoid::free(&["a", "b"]);
        let ab = free.parse("ab").unwrap();
        let q = free.quotient(SubMonoid::generated_by(&free, vec![ab]).unwrap()).unwrap();
        let aabb = q.class_of(&free.parse("aabb").unwrap()).unwrap();
        let ba = q.class_of(&free.parse("ba").unwrap()).unwrap();
        assert!(aabb.is_zero());
        assert_eq!(ba, free.parse("ba").unwrap());
        assert!(q.check_axioms_bounded(5).is_ok());
    }

    #[test]
    fn killing_one_collapses() {
        let z2 = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(2)).unwrap();
        let q = z2.quotient(SubMonoid::generated_by(&z2, vec![MonElement::One]).unwrap()).unwrap();
        assert!(q.is_trivial());
        assert_eq!(q.elements().unwrap(), vec![MonElement::Zero]);
    }
}
