use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::extend_mon::{extend_mon, letter_members};
use super::{coextend, extend_set, module_homs, restrict, ScalarChange};
use crate::absorption_monoid::MonElement;
use crate::error::{Error, Result};
use crate::pointed_modules::LeftModule;

type Map = BTreeMap<MonElement, MonElement>;

/// Endomorphisms used for naturality squares, per side.
const NATURALITY_SAMPLES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// `l_!` left adjoint to `l*`.
    Left,
    /// `l_*` right adjoint to `l*`.
    Right,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            _ => Err(Error::TypeMismatch(format!("unknown side {s:?}"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// Outcome of an adjunction check on one finite instance.
///
/// `homs_over_target` counts morphisms of `T'`-modules (out of `l_!M` on
/// the left side, into `l_*M` on the right side); `homs_over_source` counts
/// morphisms of `T`-modules involving `l*M'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionReport {
    pub side: Side,
    pub subject: String,
    pub homs_over_target: usize,
    pub homs_over_source: usize,
    pub round_trips: usize,
    pub naturality_squares: usize,
    pub failures: Vec<String>,
}

impl AdjunctionReport {
    fn new(side: Side, subject: String) -> Self {
        AdjunctionReport {
            side,
            subject,
            homs_over_target: 0,
            homs_over_source: 0,
            round_trips: 0,
            naturality_squares: 0,
            failures: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.failures.is_empty() && self.homs_over_target == self.homs_over_source
    }
}

impl fmt::Display for AdjunctionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} adjunction for {}: |Hom| {} vs {}, {} round trips, {} naturality squares",
            self.side, self.subject, self.homs_over_target, self.homs_over_source, self.round_trips, self.naturality_squares
        )?;
        for fail in &self.failures {
            write!(f, "\n  {fail}")?;
        }
        Ok(())
    }
}

fn show(m: &LeftModule, f: &Map) -> String {
    let c = m.carrier();
    format!(
        "{{{}}}",
        f.iter()
            .map(|(k, v)| format!("{} -> {}", c.label(k), c.label(v)))
            .collect::<Vec<_>>()
            .join(", ")
    )
}

fn compose(first: &Map, second: &Map) -> Map {
    first.iter().map(|(k, v)| (k.clone(), second[v].clone())).collect()
}

/// `Hom_{T'}(l_!(M, T), (M', T'))` against `Hom_T((M, T), l*(M', T'))`
/// through `f -> f(<1, .>)` and `h -> (<t', m> -> t'.h(m))`.
///
/// Pointed-set modules use the class extension; monoid modules use the word
/// extension, which must saturate within `budget` and be finite.
pub fn adjunction_left_check(
    l: &ScalarChange,
    module: &LeftModule,
    target: &LeftModule,
    budget: usize,
) -> Result<AdjunctionReport> {
    let restricted = restrict(l, target)?;
    let subject = format!("{} / {}", module.name(), target.name());
    let mut report = AdjunctionReport::new(Side::Left, subject);
    let m_elems = module
        .carrier()
        .elements()
        .ok_or_else(|| Error::InfiniteInput(module.carrier().describe()))?;
    let mon = match (module.carrier().is_mon(), target.carrier().is_mon()) {
        (a, b) if a == b => a,
        _ => return Err(Error::TypeMismatch("Set* and Mon* modules".into())),
    };

    // The extension, `<1, m>`, and the value of `h` on every extension
    // element (checked against every representative).
    let (ext_module, unit, lower): (LeftModule, Box<dyn Fn(&MonElement) -> MonElement>, Box<dyn Fn(&Map) -> std::result::Result<Map, String>>) =
        if mon {
            let ext = extend_mon(l, module, budget)?;
            if !ext.monoid().is_saturated() {
                return Err(Error::BudgetExceeded(budget));
            }
            let elems = ext
                .carrier()
                .elements()
                .ok_or_else(|| Error::InfiniteInput(ext.carrier().describe()))?;
            let letters = letter_members(&ext);
            let (ext2, target2) = (ext.clone(), target.clone());
            let cm = target.carrier().as_monoid().cloned().expect("monoid carrier");
            let lower = move |h: &Map| {
                for (i, members) in letters.iter().enumerate() {
                    let vals: BTreeSet<MonElement> =
                        members.iter().map(|(t, m)| target2.act_unchecked(t, &h[m])).collect();
                    if vals.len() > 1 {
                        return Err(format!("letter {i} has representatives with different images"));
                    }
                }
                Ok(elems
                    .iter()
                    .map(|x| {
                        let y = match x {
                            MonElement::Zero => MonElement::Zero,
                            MonElement::One => cm.one(),
                            _ => ext2
                                .monoid()
                                .letters_of(x)
                                .iter()
                                .map(|(t, m)| target2.act_unchecked(t, &h[m]))
                                .fold(cm.one(), |acc, v| cm.mul(&acc, &v)),
                        };
                        (x.clone(), y)
                    })
                    .collect())
            };
            let ext3 = ext.clone();
            (ext.module().clone(), Box::new(move |m| ext3.unit(m)), Box::new(lower))
        } else {
            let ext = extend_set(l, module)?;
            let elems = ext.module().carrier().elements().expect("finite extension");
            let (ext2, target2) = (ext.clone(), target.clone());
            let lower = move |h: &Map| {
                let mut out = Map::new();
                for c in &elems {
                    let vals: BTreeSet<MonElement> = ext2
                        .members(c)
                        .iter()
                        .map(|(t, m)| target2.act_unchecked(t, &h[m]))
                        .collect();
                    if vals.len() > 1 {
                        return Err(format!("class {} has representatives with different images", ext2.module().carrier().label(c)));
                    }
                    out.insert(c.clone(), vals.into_iter().next().unwrap_or(MonElement::Zero));
                }
                Ok(out)
            };
            let ext3 = ext.clone();
            (ext.module().clone(), Box::new(move |m| ext3.unit(m)), Box::new(lower))
        };

    let over_target = module_homs(&ext_module, target)?;
    let over_source = module_homs(module, &restricted)?;
    report.homs_over_target = over_target.len();
    report.homs_over_source = over_source.len();
    let target_set: BTreeSet<&Map> = over_target.iter().collect();
    let source_set: BTreeSet<&Map> = over_source.iter().collect();
    let upper = |f: &Map| -> Map { m_elems.iter().map(|m| (m.clone(), f[&unit(m)].clone())).collect() };

    for f in &over_target {
        let fb = upper(f);
        if !source_set.contains(&fb) {
            report.failures.push(format!("f-bar of {} is not a morphism", show(&ext_module, f)));
            continue;
        }
        match lower(&fb) {
            Ok(back) if back == *f => report.round_trips += 1,
            Ok(_) => report.failures.push(format!("f-bar-underline differs from {}", show(&ext_module, f))),
            Err(e) => report.failures.push(e),
        }
    }
    for h in &over_source {
        match lower(h) {
            Ok(hu) if target_set.contains(&hu) => {
                if upper(&hu) == *h {
                    report.round_trips += 1;
                } else {
                    report.failures.push(format!("h-underline-bar differs from {}", show(module, h)));
                }
            }
            Ok(_) => report.failures.push(format!("h-underline of {} is not a morphism", show(module, h))),
            Err(e) => report.failures.push(e),
        }
    }

    // Naturality in M': bar(phi o f) = phi o bar(f).
    let endos = module_homs(target, target)?;
    for phi in endos.iter().take(NATURALITY_SAMPLES) {
        for f in &over_target {
            report.naturality_squares += 1;
            if upper(&compose(f, phi)) != compose(&upper(f), phi) {
                report.failures.push(format!("naturality fails at {}", show(target, phi)));
            }
        }
    }
    // Naturality in M: bar(f o l_!(psi)) = bar(f) o psi, with
    // l_!(psi)(<1, m>) = <1, psi(m)>.
    let endos = module_homs(module, module)?;
    for psi in endos.iter().take(NATURALITY_SAMPLES) {
        for f in &over_target {
            report.naturality_squares += 1;
            let lhs: Map = m_elems.iter().map(|m| (m.clone(), f[&unit(&psi[m])].clone())).collect();
            if lhs != compose(psi, &upper(f)) {
                report.failures.push(format!("naturality fails at {}", show(module, psi)));
            }
        }
    }
    Ok(report)
}

/// `Hom_T(l*(M', T'), (M, T))` against `Hom_{T'}((M', T'), l_*(M, T))`
/// through `f -> (m' -> (t' -> f(t'.m')))` and `k -> (m' -> k(m')(1))`.
pub fn adjunction_right_check(l: &ScalarChange, target: &LeftModule, module: &LeftModule) -> Result<AdjunctionReport> {
    let restricted = restrict(l, target)?;
    let co = coextend(l, module)?;
    let subject = format!("{} / {}", target.name(), module.name());
    let mut report = AdjunctionReport::new(Side::Right, subject);
    let tp = l
        .target()
        .elements()
        .ok_or_else(|| Error::InfiniteInput(l.target().describe()))?;
    let mp_elems = target
        .carrier()
        .elements()
        .ok_or_else(|| Error::InfiniteInput(target.carrier().describe()))?;

    let over_source = module_homs(&restricted, module)?;
    let over_target = module_homs(target, co.module())?;
    report.homs_over_source = over_source.len();
    report.homs_over_target = over_target.len();
    let source_set: BTreeSet<&Map> = over_source.iter().collect();
    let target_set: BTreeSet<&Map> = over_target.iter().collect();

    let upper = |f: &Map| -> Option<Map> {
        mp_elems
            .iter()
            .map(|m| {
                let values: Vec<MonElement> = tp.iter().map(|t| f[&target.act_unchecked(t, m)].clone()).collect();
                co.element_of(&values).map(|g| (m.clone(), g))
            })
            .collect()
    };
    let lower = |k: &Map| -> Option<Map> {
        mp_elems
            .iter()
            .map(|m| co.evaluate(&k[m], &MonElement::One).map(|v| (m.clone(), v)))
            .collect()
    };

    for f in &over_source {
        match upper(f) {
            Some(fb) if target_set.contains(&fb) => {
                if lower(&fb).as_ref() == Some(f) {
                    report.round_trips += 1;
                } else {
                    report.failures.push(format!("f-bar-underline differs from {}", show(&restricted, f)));
                }
            }
            _ => report.failures.push(format!("f-bar of {} is not a morphism", show(&restricted, f))),
        }
    }
    for k in &over_target {
        match lower(k) {
            Some(ku) if source_set.contains(&ku) => {
                if upper(&ku).as_ref() == Some(k) {
                    report.round_trips += 1;
                } else {
                    report.failures.push(format!("k-underline-bar differs from {}", show(target, k)));
                }
            }
            _ => report.failures.push(format!("k-underline of {} is not a morphism", show(target, k))),
        }
    }

    // Naturality in M: bar(psi o f) = l_*(psi) o bar(f).
    let endos = module_homs(module, module)?;
    for psi in endos.iter().take(NATURALITY_SAMPLES) {
        for f in &over_source {
            report.naturality_squares += 1;
            let lhs = upper(&compose(f, psi));
            let rhs = upper(f).and_then(|fb| {
                fb.iter()
                    .map(|(m, g)| {
                        let values: Vec<MonElement> =
                            tp.iter().map(|t| psi[&co.evaluate(g, t).expect("element")].clone()).collect();
                        co.element_of(&values).map(|v| (m.clone(), v))
                    })
                    .collect::<Option<Map>>()
            });
            if lhs.is_none() || lhs != rhs {
                report.failures.push(format!("naturality fails at {}", show(module, psi)));
            }
        }
    }
    // Naturality in M': bar(f o phi) = bar(f) o phi.
    let endos = module_homs(target, target)?;
    for phi in endos.iter().take(NATURALITY_SAMPLES) {
        for f in &over_source {
            report.naturality_squares += 1;
            let lhs = upper(&compose(phi, f));
            let rhs = upper(f).map(|fb| compose(phi, &fb));
            if lhs.is_none() || lhs != rhs {
                report.failures.push(format!("naturality fails at {}", show(target, phi)));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorption_monoid::{AbsMonoid, FiniteAbsMonoid, MonoidMorphism};
    use crate::pointed_modules::{Carrier, PointedSet};
    use crate::DEFAULT_BUDGET;

    fn z(n: usize) -> AbsMonoid {
        AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(n)).unwrap()
    }

    #[test]
    fn identity_on_two_element_modules() {
        let t = AbsMonoid::two_element();
        let l = ScalarChange::identity(&t);
        let m = LeftModule::trivial_action(&t, Carrier::Mon(t.clone()));
        let left = adjunction_left_check(&l, &m, &m, DEFAULT_BUDGET).unwrap();
        assert!(left.is_ok(), "{left}");
        assert_eq!(left.homs_over_target, 1);
        let right = adjunction_right_check(&l, &m, &m).unwrap();
        assert!(right.is_ok(), "{right}");
    }

    #[test]
    fn set_modules_along_unit_inclusion() {
        let s = AbsMonoid::two_element();
        let tp = z(2);
        let inc = MonoidMorphism::from_table(
            s.clone(),
            tp.clone(),
            BTreeMap::from([(MonElement::Zero, MonElement::Zero), (MonElement::One, MonElement::One)]),
        )
        .unwrap();
        let l = ScalarChange::new(inc, 4).unwrap();
        let m = LeftModule::trivial_action(&s, Carrier::Set(PointedSet::with_points(1)));
        let mp = LeftModule::regular(&tp);
        let left = adjunction_left_check(&l, &m, &mp, DEFAULT_BUDGET).unwrap();
        assert!(left.is_ok(), "{left}");
        assert_eq!(left.homs_over_source, 3);
        let right = adjunction_right_check(&l, &mp, &m).unwrap();
        assert!(right.is_ok(), "{right}");
    }

    #[test]
    fn side_parses() {
        assert_eq!("left".parse::<Side>().unwrap(), Side::Left);
        assert!("up".parse::<Side>().is_err());
    }
}
