use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::LeftModule;
use crate::absorption_monoid::{AxiomReport, Law, MonElement, MonoidMorphism};
use crate::error::{Error, Result};

type CarrierFn = Arc<dyn Fn(&MonElement) -> MonElement + Send + Sync>;

/// A pair `(f, h)`: `f` between carriers, `h` between scalar monoids, meant to
/// satisfy `f(t.m) = h(t).f(m)`.
#[derive(Clone)]
pub struct ModuleMorphism {
    source: LeftModule,
    target: LeftModule,
    f: CarrierFn,
    h: MonoidMorphism,
}

impl fmt::Debug for ModuleMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMorphism({} -> {})", self.source.name(), self.target.name())
    }
}

impl ModuleMorphism {
    pub fn new(
        source: LeftModule,
        target: LeftModule,
        f: impl Fn(&MonElement) -> MonElement + Send + Sync + 'static,
        h: MonoidMorphism,
    ) -> Result<Self> {
        if h.source() != source.scalars() || h.target() != target.scalars() {
            return Err(Error::TypeMismatch(format!(
                "scalar map {} -> {} does not fit modules over {} and {}",
                h.source().describe(),
                h.target().describe(),
                source.scalars().describe(),
                target.scalars().describe()
            )));
        }
        Ok(ModuleMorphism {
            source,
            target,
            f: Arc::new(f),
            h,
        })
    }

    /// Carrier map given as a table over a finite source carrier, with the
    /// identity on scalars.
    pub fn from_table(source: LeftModule, target: LeftModule, images: BTreeMap<MonElement, MonElement>) -> Result<Self> {
        let elems = source
            .carrier()
            .elements()
            .ok_or_else(|| Error::InfiniteInput(source.carrier().describe()))?;
        if let Some(x) = elems.iter().find(|x| !images.contains_key(x)) {
            return Err(Error::TypeMismatch(format!("no image for {}", source.carrier().label(x))));
        }
        let h = MonoidMorphism::identity(source.scalars());
        let images = Arc::new(images);
        Self::new(source, target, move |x| images[x].clone(), h)
    }

    pub fn identity(m: &LeftModule) -> Self {
        ModuleMorphism {
            source: m.clone(),
            target: m.clone(),
            f: Arc::new(|x| x.clone()),
            h: MonoidMorphism::identity(m.scalars()),
        }
    }

    pub fn source(&self) -> &LeftModule {
        &self.source
    }

    pub fn target(&self) -> &LeftModule {
        &self.target
    }

    pub fn scalar_map(&self) -> &MonoidMorphism {
        &self.h
    }

    pub fn apply(&self, x: &MonElement) -> MonElement {
        (self.f)(x)
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &ModuleMorphism) -> Result<ModuleMorphism> {
        if self.target.carrier() != g.source.carrier() || self.target.scalars() != g.source.scalars() {
            return Err(Error::TypeMismatch(format!(
                "cannot compose {} with {}",
                self.target.name(),
                g.source.name()
            )));
        }
        let (f1, f2) = (self.f.clone(), g.f.clone());
        Ok(ModuleMorphism {
            source: self.source.clone(),
            target: g.target.clone(),
            f: Arc::new(move |x| f2(&f1(x))),
            h: self.h.then(&g.h)?,
        })
    }

    /// Equivariance, basepoint preservation and (for `Mon*` carriers) the
    /// monoid-morphism laws of the carrier map.
    pub fn check(&self, bound: usize) -> AxiomReport {
        let (dt, st) = self.source.scalars().check_domain(bound);
        let (dm, sm) = self.source.carrier().check_domain(bound);
        let exhaustive = st.is_none() && sm.is_none();
        let fits = |s: usize| exhaustive || s <= bound;
        let mut report = AxiomReport::new(
            format!("module morphism {} -> {}", self.source.name(), self.target.name()),
            if exhaustive { None } else { Some(bound) },
        );
        let (src, tgt) = (self.source.carrier(), self.target.carrier());
        for (m, _) in &dm {
            report.checked += 1;
            let y = self.apply(m);
            if !tgt.contains(&y) {
                report.violation(Law::ForeignImage, vec![src.label(m)], format!("{y:?}"));
            }
        }
        if !report.is_ok() {
            return report.finish();
        }
        report.checked += 1;
        let star = self.apply(&MonElement::Zero);
        if !star.is_zero() {
            report.violation(Law::BasepointFixed, vec!["*".into()], format!("f(*) = {}", tgt.label(&star)));
        }
        if let (Some(ms), Some(mt)) = (src.as_monoid(), tgt.as_monoid()) {
            report.checked += 1;
            let one = self.apply(&ms.one());
            if one != mt.one() {
                report.violation(Law::PreservesOne, vec!["1".into()], format!("f(1) = {}", mt.label(&one)));
            }
            for (a, sa) in &dm {
                for (b, _) in dm.iter().filter(|(_, sb)| fits(sa + sb)) {
                    report.checked += 1;
                    let lhs = self.apply(&ms.mul(a, b));
                    let rhs = mt.mul(&self.apply(a), &self.apply(b));
                    if lhs != rhs {
                        report.violation(
                            Law::Multiplicative,
                            vec![ms.label(a), ms.label(b)],
                            format!("{} != {}", mt.label(&lhs), mt.label(&rhs)),
                        );
                    }
                }
            }
        }
        for (t, s1) in &dt {
            let ht = self.h.apply_unchecked(t);
            for (m, _) in dm.iter().filter(|(_, s)| fits(s1 + s)) {
                report.checked += 1;
                let lhs = self.apply(&self.source.act_unchecked(t, m));
                let rhs = self.target.act_unchecked(&ht, &self.apply(m));
                if lhs != rhs {
                    report.violation(
                        Law::Equivariance,
                        vec![self.source.scalars().label(t), src.label(m)],
                        format!("{} != {}", tgt.label(&lhs), tgt.label(&rhs)),
                    );
                }
            }
        }
        report.finish()
    }

    /// Whether both carrier maps agree on every source element of size at
    /// most `bound`.
    pub fn agrees_with(&self, other: &ModuleMorphism, bound: usize) -> bool {
        self.source
            .carrier()
            .elements_up_to(bound)
            .iter()
            .all(|(x, _)| self.apply(x) == other.apply(x))
            && self.h.agrees_with(&other.h, bound)
    }
}
