use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::absorption_monoid::{AbsMonoid, MonElement};
use crate::error::{Error, Result};

/// Element of the contracted monoid algebra `Z[T]`: a finite formal sum of
/// non-zero monoid elements with non-zero integer coefficients. The monoid
/// zero is identified with the algebra zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MonoidAlgebraElement {
    terms: BTreeMap<MonElement, i64>,
}

impl MonoidAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `sum r_i t_i`; terms on the monoid zero or with coefficient 0 vanish,
    /// repeated elements add up.
    pub fn from_terms(t: &AbsMonoid, terms: impl IntoIterator<Item = (MonElement, i64)>) -> Result<Self> {
        let mut out = Self::zero();
        for (x, r) in terms {
            if !t.contains(&x) {
                return Err(Error::foreign(format!("{x:?}"), t.describe()));
            }
            out.add_term(x, r);
        }
        Ok(out)
    }

    fn add_term(&mut self, x: MonElement, r: i64) {
        if x.is_zero() || r == 0 {
            return;
        }
        let c = self.terms.entry(x.clone()).or_insert(0);
        *c += r;
        if *c == 0 {
            self.terms.remove(&x);
        }
    }

    pub fn terms(&self) -> &BTreeMap<MonElement, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, x: &MonElement) -> i64 {
        self.terms.get(x).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (x, r) in &other.terms {
            out.add_term(x.clone(), *r);
        }
        out
    }

    pub fn scale(&self, r: i64) -> Self {
        let mut out = Self::zero();
        for (x, c) in &self.terms {
            out.add_term(x.clone(), c * r);
        }
        out
    }

    /// `(sum r_i t_i)(sum s_j u_j) = sum r_i s_j (t_i u_j)`, dropping products
    /// that land on the monoid zero.
    pub fn multiply(&self, other: &Self, t: &AbsMonoid) -> Result<Self> {
        for x in self.terms.keys().chain(other.terms.keys()) {
            if !t.contains(x) {
                return Err(Error::foreign(format!("{x:?}"), t.describe()));
            }
        }
        let mut out = Self::zero();
        for (a, r) in &self.terms {
            for (b, s) in &other.terms {
                out.add_term(t.mul(a, b), r * s);
            }
        }
        Ok(out)
    }

    pub fn display(&self, t: &AbsMonoid) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (x, r)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push_str(if *r < 0 { " - " } else { " + " });
            } else if *r < 0 {
                s.push('-');
            }
            let _ = write!(s, "{}*{}", r.abs(), t.label(x));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distributive_expansion() {
        let t = AbsMonoid::free(&["a", "b"]);
        let (a, b) = (t.parse("a").unwrap(), t.parse("b").unwrap());
        let x = MonoidAlgebraElement::from_terms(&t, [(a.clone(), 2), (b.clone(), 3)]).unwrap();
        let y = MonoidAlgebraElement::from_terms(&t, [(a, 1), (b, 1)]).unwrap();
        let p = x.multiply(&y, &t).unwrap();
        assert_eq!(p.display(&t), "2*aa + 2*ab + 3*ba + 3*bb");
    }

    #[test]
    fn contracted_zero() {
        let t = AbsMonoid::path(crate::directed_space::Space::Grid(crate::directed_space::GridSpace::new(1, 1).unwrap()));
        let p = t.parse("0,0:R").unwrap();
        let q = t.parse("0,0:U").unwrap();
        let x = MonoidAlgebraElement::from_terms(&t, [(p, 1)]).unwrap();
        let y = MonoidAlgebraElement::from_terms(&t, [(q, 1)]).unwrap();
        assert!(x.multiply(&y, &t).unwrap().is_zero());
        let zero_term = MonoidAlgebraElement::from_terms(&t, [(MonElement::Zero, 5)]).unwrap();
        assert!(zero_term.is_zero());
    }
}
