use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{AbsMonoid, AxiomReport, Law, MonElement};
use crate::error::{Error, Result};

type MapFn = Arc<dyn Fn(&MonElement) -> MonElement + Send + Sync>;

#[derive(Clone)]
enum MorphismMap {
    /// Image of every element of a finite source.
    Table(BTreeMap<MonElement, MonElement>),
    /// Images of the letters of a free source, extended multiplicatively.
    Letters(Vec<MonElement>),
    Function(MapFn),
}

/// A map between absorption monoids that is meant to be a morphism.
/// Nothing is assumed: [`MonoidMorphism::check_morphism`] verifies the laws.
#[derive(Clone)]
pub struct MonoidMorphism {
    source: AbsMonoid,
    target: AbsMonoid,
    map: MorphismMap,
}

impl fmt::Debug for MonoidMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonoidMorphism({} -> {})", self.source.describe(), self.target.describe())
    }
}

impl MonoidMorphism {
    /// Explicit images for every element of a finite source.
    pub fn from_table(
        source: AbsMonoid,
        target: AbsMonoid,
        images: BTreeMap<MonElement, MonElement>,
    ) -> Result<Self> {
        let elems = source
            .elements()
            .ok_or_else(|| Error::InfiniteInput(source.describe()))?;
        for x in &elems {
            let y = images
                .get(x)
                .ok_or_else(|| Error::TypeMismatch(format!("no image for {}", source.label(x))))?;
            if !target.contains(y) {
                return Err(Error::foreign(format!("{y:?}"), target.describe()));
            }
        }
        Ok(MonoidMorphism {
            source,
            target,
            map: MorphismMap::Table(images),
        })
    }

    /// Images of the letters of a free source; words map to products.
    pub fn from_letters(source: AbsMonoid, target: AbsMonoid, images: Vec<MonElement>) -> Result<Self> {
        let alphabet = source.as_free().ok_or(Error::ScalarsNotFree)?;
        if alphabet.letters.len() != images.len() {
            return Err(Error::TypeMismatch(format!(
                "{} letter images for {} letters",
                images.len(),
                alphabet.letters.len()
            )));
        }
        for y in &images {
            if !target.contains(y) {
                return Err(Error::foreign(format!("{y:?}"), target.describe()));
            }
        }
        Ok(MonoidMorphism {
            source,
            target,
            map: MorphismMap::Letters(images),
        })
    }

    /// Arbitrary evaluable map. The closure must return handles of `target`.
    pub fn from_fn(
        source: AbsMonoid,
        target: AbsMonoid,
        f: impl Fn(&MonElement) -> MonElement + Send + Sync + 'static,
    ) -> Self {
        MonoidMorphism {
            source,
            target,
            map: MorphismMap::Function(Arc::new(f)),
        }
    }

    pub fn identity(m: &AbsMonoid) -> Self {
        Self::from_fn(m.clone(), m.clone(), |x| x.clone())
    }

    pub fn source(&self) -> &AbsMonoid {
        &self.source
    }

    pub fn target(&self) -> &AbsMonoid {
        &self.target
    }

    /// Image of `x`, which must be an element of the source.
    pub fn apply(&self, x: &MonElement) -> Result<MonElement> {
        if !self.source.contains(x) {
            return Err(Error::foreign(format!("{x:?}"), self.source.describe()));
        }
        Ok(self.apply_unchecked(x))
    }

    pub fn apply_unchecked(&self, x: &MonElement) -> MonElement {
        match &self.map {
            MorphismMap::Table(images) => images[x].clone(),
            MorphismMap::Letters(images) => match x {
                MonElement::Zero => MonElement::Zero,
                MonElement::One => self.target.one(),
                MonElement::Word(w) => w.iter().fold(self.target.one(), |acc, &i| {
                    self.target.mul(&acc, &images[i as usize])
                }),
                MonElement::Tuple(_) => unreachable!("free monoids have no tuples"),
            },
            MorphismMap::Function(f) => f(x),
        }
    }

    /// `g ∘ self`; `g` must start where `self` ends.
    pub fn then(&self, g: &MonoidMorphism) -> Result<MonoidMorphism> {
        if self.target != g.source {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source.describe(),
                self.target.describe(),
                g.source.describe(),
                g.target.describe()
            )));
        }
        let (f, g2) = (self.clone(), g.clone());
        Ok(Self::from_fn(self.source.clone(), g.target.clone(), move |x| {
            g2.apply_unchecked(&f.apply_unchecked(x))
        }))
    }

    /// Check multiplicativity on every pair of the source's check domain with
    /// total size at most `bound` (exhaustive on small finite sources), plus
    /// `f(1) = 1`, `f(0) = 0` and that images lie in the target.
    pub fn check_morphism(&self, bound: usize) -> AxiomReport {
        let (dom, scope) = self.source.check_domain(bound);
        let subject = format!("morphism {} -> {}", self.source.describe(), self.target.describe());
        let mut report = AxiomReport::new(subject, scope);
        let (s, t) = (&self.source, &self.target);
        let images: Vec<MonElement> = dom.iter().map(|(x, _)| self.apply_unchecked(x)).collect();
        for ((x, _), y) in dom.iter().zip(&images) {
            report.checked += 1;
            if !t.contains(y) {
                report.violation(Law::ForeignImage, vec![s.label(x)], format!("{y:?}"));
            }
        }
        if !report.is_ok() {
            return report.finish();
        }
        report.checked += 2;
        let one = self.apply_unchecked(&s.one());
        if one != t.one() {
            report.violation(Law::PreservesOne, vec![s.label(&s.one())], format!("f(1) = {}", t.label(&one)));
        }
        let zero = self.apply_unchecked(&MonElement::Zero);
        if !zero.is_zero() {
            report.violation(Law::PreservesZero, vec!["0".into()], format!("f(0) = {}", t.label(&zero)));
        }
        for (i, (a, sa)) in dom.iter().enumerate() {
            for (j, (b, sb)) in dom.iter().enumerate() {
                if sa + sb > bound && scope.is_some() {
                    continue;
                }
                report.checked += 1;
                let lhs = self.apply_unchecked(&s.mul(a, b));
                let rhs = t.mul(&images[i], &images[j]);
                if lhs != rhs {
                    report.violation(
                        Law::Multiplicative,
                        vec![s.label(a), s.label(b)],
                        format!("f(ab) = {} but f(a)f(b) = {}", t.label(&lhs), t.label(&rhs)),
                    );
                }
            }
        }
        report.finish()
    }

    /// Whether two morphisms agree on every element of size at most `bound`
    /// (on all elements for finite sources).
    pub fn agrees_with(&self, other: &MonoidMorphism, bound: usize) -> bool {
        self.source == other.source
            && self
                .source
                .elements_up_to(self.source.finite_bound().unwrap_or(bound))
                .iter()
                .all(|(x, _)| self.apply_unchecked(x) == other.apply_unchecked(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FiniteAbsMonoid;

    #[test]
    fn identity_is_a_morphism() {
        let z3 = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(3)).unwrap();
        assert!(MonoidMorphism::identity(&z3).check_morphism(6).is_ok());
        let free = AbsMonoid::free(&["a", "b"]);
        let r = MonoidMorphism::identity(&free).check_morphism(4);
        assert!(r.is_ok());
        assert_eq!(r.bound, Some(4));
    }

    #[test]
    fn letter_to_zero_is_a_morphism() {
        let free = AbsMonoid::free(&["a"]);
        let two = AbsMonoid::two_element();
        let f = MonoidMorphism::from_letters(free.clone(), two, vec![MonElement::Zero]).unwrap();
        assert!(f.check_morphism(6).is_ok());
        assert_eq!(f.apply(&free.parse("aaa").unwrap()).unwrap(), MonElement::Zero);
    }

    #[test]
    fn non_multiplicative_table_map() {
        // {0,1,a} with a*a = a, mapped into Z/2 with zero sending a to g.
        let idem = AbsMonoid::from_table(FiniteAbsMonoid::with_default_names(vec![
            vec![0, 0, 0],
            vec![0, 1, 2],
            vec![0, 2, 2],
        ]))
        .unwrap();
        let z2 = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(2)).unwrap();
        let g = z2.parse("g").unwrap();
        let images = BTreeMap::from([
            (MonElement::Zero, MonElement::Zero),
            (MonElement::One, MonElement::One),
            (MonElement::letter(2), g),
        ]);
        let f = MonoidMorphism::from_table(idem, z2, images).unwrap();
        let r = f.check_morphism(0);
        assert!(r.violates(Law::Multiplicative));
        assert!(r
            .violations
            .iter()
            .any(|v| v.witnesses == vec!["e2".to_string(), "e2".to_string()]));
    }

    #[test]
    fn composition_type_mismatch() {
        let a = AbsMonoid::two_element();
        let b = AbsMonoid::free(&["x"]);
        let f = MonoidMorphism::identity(&a);
        let g = MonoidMorphism::identity(&b);
        assert!(matches!(f.then(&g), Err(Error::TypeMismatch(_))));
        assert!(f.then(&f).unwrap().check_morphism(0).is_ok());
    }
}
