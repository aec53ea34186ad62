use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Carrier, LeftModule, PointedSet};
use crate::absorption_monoid::{AbsMonoid, MonElement};
use crate::error::{Error, Result};

/// Deterministic labelled transition system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionSystem {
    pub states: Vec<String>,
    pub letters: Vec<String>,
    /// `(state, letter) -> state`, all by index.
    pub transitions: BTreeMap<(usize, usize), usize>,
}

impl TransitionSystem {
    pub fn new(states: Vec<String>, letters: Vec<String>) -> Self {
        TransitionSystem {
            states,
            letters,
            transitions: BTreeMap::new(),
        }
    }

    /// Add `from --letter--> to`. A second, different successor for the same
    /// `(from, letter)` is a nondeterminism error.
    pub fn add(&mut self, from: usize, letter: usize, to: usize) -> Result<()> {
        for (i, bound) in [(from, self.states.len()), (to, self.states.len())] {
            if i >= bound {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    bound: format!("< {bound}"),
                });
            }
        }
        if letter >= self.letters.len() {
            return Err(Error::IndexOutOfRange {
                index: letter,
                bound: format!("< {}", self.letters.len()),
            });
        }
        match self.transitions.get(&(from, letter)) {
            Some(&prev) if prev != to => Err(Error::Nondeterministic {
                state: self.states[from].clone(),
                letter: self.letters[letter].clone(),
            }),
            _ => {
                self.transitions.insert((from, letter), to);
                Ok(())
            }
        }
    }

    /// Fold a word (letter ids, leftmost applied last) through the relation.
    pub fn run(&self, word: &[u32], state: usize) -> Option<usize> {
        word.iter()
            .rev()
            .try_fold(state, |s, &l| self.transitions.get(&(s, l as usize)).copied())
    }
}

/// Module over the free absorption monoid on the letters: states plus `*`,
/// a letter sends a state to its successor or to `*`, and a word acts letter
/// by letter from the right (`(a*b).s = a.(b.s)`).
pub fn module_from_transition_system(ts: &TransitionSystem) -> LeftModule {
    let scalars = AbsMonoid::free(&ts.letters);
    let mut names = vec!["*".to_string()];
    names.extend(ts.states.iter().cloned());
    let carrier = Carrier::Set(PointedSet::finite(&names));
    let ts2 = ts.clone();
    let action = move |t: &MonElement, s: &MonElement| match (t, s) {
        (MonElement::Zero, _) | (_, MonElement::Zero) => MonElement::Zero,
        (MonElement::One, s) => s.clone(),
        (MonElement::Word(w), MonElement::Word(st)) => match ts2.run(w, st[0] as usize - 1) {
            Some(next) => PointedSet::point(next + 1),
            None => MonElement::Zero,
        },
        _ => MonElement::Zero,
    };
    LeftModule::new(scalars, carrier, action).named(format!("transition module on {} states", ts.states.len()))
}

/// Read the transition relation back off a finite module over a free monoid.
pub fn transition_system_from_module(module: &LeftModule) -> Result<TransitionSystem> {
    let alphabet = module.scalars().as_free().ok_or(Error::ScalarsNotFree)?;
    let carrier = module.carrier();
    let elems = carrier
        .elements()
        .ok_or_else(|| Error::InfiniteInput(carrier.describe()))?;
    let states: Vec<MonElement> = elems.into_iter().filter(|x| !x.is_zero()).collect();
    let mut ts = TransitionSystem::new(
        states.iter().map(|s| carrier.label(s)).collect(),
        alphabet.letters.clone(),
    );
    for (i, s) in states.iter().enumerate() {
        for l in 0..alphabet.letters.len() {
            let image = module.act(&MonElement::letter(l as u32), s)?;
            if !image.is_zero() {
                let j = states.iter().position(|x| *x == image).expect("image in carrier");
                ts.add(i, l, j)?;
            }
        }
    }
    Ok(ts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle() -> TransitionSystem {
        let mut ts = TransitionSystem::new(vec!["s0".into(), "s1".into()], vec!["a".into()]);
        ts.add(0, 0, 1).unwrap();
        ts.add(1, 0, 0).unwrap();
        ts
    }

    #[test]
    fn empty_relation_acts_as_star() {
        let ts = TransitionSystem::new(vec!["p".into(), "q".into()], vec!["a".into(), "b".into()]);
        let m = module_from_transition_system(&ts);
        for (w, _) in m.scalars().elements_up_to(3) {
            for s in m.carrier().elements().unwrap() {
                let img = m.act(&w, &s).unwrap();
                if w.is_one() {
                    assert_eq!(img, s);
                } else {
                    assert!(img.is_zero());
                }
            }
        }
    }

    #[test]
    fn two_cycle() {
        let m = module_from_transition_system(&cycle());
        let s0 = m.carrier().parse("s0").unwrap();
        let aa = m.scalars().parse("aa").unwrap();
        assert_eq!(m.act(&aa, &s0).unwrap(), s0);
        assert!(m.check_module_axioms(6).is_ok());
    }

    #[test]
    fn round_trip() {
        let ts = cycle();
        assert_eq!(transition_system_from_module(&module_from_transition_system(&ts)).unwrap(), ts);
    }

    #[test]
    fn nondeterminism_is_rejected() {
        let mut ts = cycle();
        assert!(matches!(ts.add(0, 0, 0), Err(Error::Nondeterministic { .. })));
    }

    #[test]
    fn letter_acting_as_star() {
        let mut ts = TransitionSystem::new(vec!["p".into()], vec!["a".into(), "b".into()]);
        ts.add(0, 0, 0).unwrap();
        let back = transition_system_from_module(&module_from_transition_system(&ts)).unwrap();
        assert!(back.transitions.keys().all(|&(_, l)| l == 0));
    }

    #[test]
    fn non_free_scalars() {
        let m = LeftModule::regular(&AbsMonoid::two_element());
        assert_eq!(transition_system_from_module(&m).unwrap_err(), Error::ScalarsNotFree);
    }
}
