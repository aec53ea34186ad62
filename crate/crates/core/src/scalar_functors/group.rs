use std::fmt;

use serde::{Deserialize, Serialize};

use super::{extend_mon, Equality, ScalarChange};
use crate::absorption_monoid::{LazyMonoid, MonElement};
use crate::error::{Error, Result};
use crate::pointed_modules::LeftModule;

/// Outcome of checking that `l_!` of an absorption-group module is again an
/// absorption group, word by word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub subject: String,
    pub max_len: usize,
    pub words_checked: usize,
    /// Words whose product is already `0`.
    pub zero_words: usize,
    pub undecided: usize,
    pub failures: Vec<String>,
}

impl GroupReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty() && self.undecided == 0
    }
}

impl fmt::Display for GroupReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "inverses in {}: {} words up to length {} ({} zero, {} undecided)",
            self.subject, self.words_checked, self.max_len, self.zero_words, self.undecided
        )?;
        for fail in &self.failures {
            write!(f, "\n  {fail}")?;
        }
        Ok(())
    }
}

/// For every word `<t1, m1> ... <tn, mn>` with `n <= max_len` over pairs of
/// nonzero elements, check that `<tn, mn^-1> ... <t1, m1^-1>` is a two-sided
/// inverse in `l_!(M, T)`.
pub fn group_preservation_check(
    l: &ScalarChange,
    module: &LeftModule,
    max_len: usize,
    budget: usize,
) -> Result<GroupReport> {
    let cm = module
        .carrier()
        .as_monoid()
        .ok_or_else(|| Error::TypeMismatch("group preservation needs a monoid carrier".into()))?;
    let table = cm
        .to_table()
        .ok_or_else(|| Error::InfiniteInput(cm.describe()))?;
    if !table.is_absorption_group() {
        return Err(Error::TypeMismatch(format!("{} is not an absorption group", cm.describe())));
    }
    let ms: Vec<MonElement> = cm.elements().expect("finite").into_iter().filter(|x| !x.is_zero()).collect();
    let one = cm.one();
    let inverse = |m: &MonElement| ms.iter().find(|y| cm.mul(m, y) == one).cloned().expect("group");
    let tp: Vec<MonElement> = l
        .target()
        .elements()
        .ok_or_else(|| Error::InfiniteInput(l.target().describe()))?
        .into_iter()
        .filter(|x| !x.is_zero())
        .collect();
    let pairs: Vec<(MonElement, MonElement)> = tp
        .iter()
        .flat_map(|t| ms.iter().map(move |m| (t.clone(), m.clone())))
        .collect();

    let ext = extend_mon(l, module, budget)?;
    let monoid = ext.monoid();
    let mut report = GroupReport {
        subject: ext.module().name().to_string(),
        max_len,
        words_checked: 0,
        zero_words: 0,
        undecided: 0,
        failures: Vec::new(),
    };
    let unit = monoid.one();
    let check = |word: &[(MonElement, MonElement)], report: &mut GroupReport| {
        report.words_checked += 1;
        let x = monoid.product_of_pairs(word);
        if x.is_zero() {
            report.zero_words += 1;
            return;
        }
        let inv_word: Vec<_> = word.iter().rev().map(|(t, m)| (t.clone(), inverse(m))).collect();
        let inv = monoid.product_of_pairs(&inv_word);
        for (side, prod) in [("right", monoid.mul(&x, &inv)), ("left", monoid.mul(&inv, &x))] {
            match monoid.equality(&prod, &unit) {
                Equality::Equal => {}
                Equality::Undecided => report.undecided += 1,
                Equality::Different => report.failures.push(format!(
                    "{} is not a {side} inverse of {}",
                    monoid.label(&inv),
                    monoid.label(&x)
                )),
            }
        }
    };

    check(&[], &mut report);
    let mut word = Vec::new();
    fn rec(
        pairs: &[(MonElement, MonElement)],
        left: usize,
        word: &mut Vec<(MonElement, MonElement)>,
        f: &mut dyn FnMut(&[(MonElement, MonElement)]),
    ) {
        if left == 0 {
            return;
        }
        for p in pairs {
            word.push(p.clone());
            f(word);
            rec(pairs, left - 1, word, f);
            word.pop();
        }
    }
    let mut visit = |w: &[(MonElement, MonElement)]| check(w, &mut report);
    rec(&pairs, max_len, &mut word, &mut visit);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorption_monoid::{AbsMonoid, FiniteAbsMonoid};
    use crate::pointed_modules::Carrier;
    use crate::DEFAULT_BUDGET;

    #[test]
    fn cyclic_carrier_words_have_reversed_inverses() {
        let t = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(2)).unwrap();
        let m = LeftModule::trivial_action(&t, Carrier::Mon(AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(3)).unwrap()));
        let r = group_preservation_check(&ScalarChange::identity(&t), &m, 3, DEFAULT_BUDGET).unwrap();
        assert!(r.is_ok(), "{r}");
        assert_eq!(r.words_checked, 1 + 6 + 36 + 216);
    }

    #[test]
    fn rejects_non_groups() {
        let t = AbsMonoid::two_element();
        let m = LeftModule::trivial_action(
            &t,
            Carrier::Mon(AbsMonoid::from_table(FiniteAbsMonoid::truncated_free(&["a"], 2)).unwrap()),
        );
        assert!(group_preservation_check(&ScalarChange::identity(&t), &m, 2, DEFAULT_BUDGET).is_err());
    }
}
