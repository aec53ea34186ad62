use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::absorption_monoid::{split_top_level, AbsMonoid, MonElement};

/// Above this many elements a finite carrier is checked up to the size bound
/// instead of exhaustively.
const EXHAUSTIVE_LIMIT: usize = 64;

/// A pointed set whose elements are produced on demand. The basepoint must be
/// [`MonElement::Zero`].
pub trait LazyCarrier: Send + Sync + fmt::Debug {
    fn describe(&self) -> String;
    fn contains(&self, x: &MonElement) -> bool;
    fn size_of(&self, x: &MonElement) -> usize;
    /// Elements of size at most `bound`, basepoint included.
    fn elements_up_to(&self, bound: usize) -> Vec<(MonElement, usize)>;
    fn finite_bound(&self) -> Option<usize>;
    fn label(&self, x: &MonElement) -> String;
    fn parse(&self, s: &str) -> Option<MonElement>;
}

#[derive(Debug)]
enum PointedSetKind {
    /// `names[0]` is the basepoint; element `i >= 1` is `Word([i])`.
    Finite(Vec<String>),
    /// Underlying pointed set of an absorption monoid (basepoint `0`).
    Monoid(AbsMonoid),
    /// Cartesian product with basepoint the all-basepoint tuple.
    Product(Vec<PointedSet>),
    /// `base` with every element of `kill` identified with the basepoint.
    Collapse {
        base: PointedSet,
        kill: BTreeSet<MonElement>,
    },
    Lazy(Arc<dyn LazyCarrier>),
}

/// A pointed set; the basepoint `*` is always [`MonElement::Zero`].
#[derive(Clone, Debug)]
pub struct PointedSet(Arc<PointedSetKind>);

impl PartialEq for PointedSet {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        use PointedSetKind::*;
        match (&*self.0, &*other.0) {
            (Finite(a), Finite(b)) => a == b,
            (Monoid(a), Monoid(b)) => a == b,
            (Product(a), Product(b)) => a == b,
            (Collapse { base: a, kill: ka }, Collapse { base: b, kill: kb }) => a == b && ka == kb,
            (Lazy(a), Lazy(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl PointedSet {
    /// Finite pointed set; the first name is the basepoint.
    pub fn finite<S: AsRef<str>>(names: &[S]) -> Self {
        assert!(!names.is_empty(), "a pointed set has a basepoint");
        PointedSet(Arc::new(PointedSetKind::Finite(
            names.iter().map(|s| s.as_ref().to_string()).collect(),
        )))
    }

    /// `{*, s1, .., sn}`.
    pub fn with_points(n: usize) -> Self {
        let mut names = vec!["*".to_string()];
        names.extend((1..=n).map(|i| format!("s{i}")));
        Self::finite(&names)
    }

    pub fn of_monoid(m: &AbsMonoid) -> Self {
        PointedSet(Arc::new(PointedSetKind::Monoid(m.clone())))
    }

    pub fn product(factors: Vec<PointedSet>) -> Self {
        PointedSet(Arc::new(PointedSetKind::Product(factors)))
    }

    pub fn collapse(&self, kill: BTreeSet<MonElement>) -> Self {
        PointedSet(Arc::new(PointedSetKind::Collapse {
            base: self.clone(),
            kill,
        }))
    }

    pub fn lazy(inner: Arc<dyn LazyCarrier>) -> Self {
        PointedSet(Arc::new(PointedSetKind::Lazy(inner)))
    }

    /// Handle of the `i`-th element of a finite pointed set (`0` is `*`).
    pub fn point(i: usize) -> MonElement {
        if i == 0 {
            MonElement::Zero
        } else {
            MonElement::letter(i as u32)
        }
    }

    /// Names of a finite pointed set, basepoint first.
    pub fn names(&self) -> Option<&[String]> {
        match &*self.0 {
            PointedSetKind::Finite(n) => Some(n),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &*self.0 {
            PointedSetKind::Finite(n) => format!("{{{}}}", n.join(",")),
            PointedSetKind::Monoid(m) => m.describe(),
            PointedSetKind::Product(fs) => fs.iter().map(|f| f.describe()).collect::<Vec<_>>().join(" x "),
            PointedSetKind::Collapse { base, kill } => format!(
                "{} / {{{}}}",
                base.describe(),
                kill.iter().map(|k| base.label(k)).collect::<Vec<_>>().join(",")
            ),
            PointedSetKind::Lazy(l) => l.describe(),
        }
    }

    pub fn basepoint(&self) -> MonElement {
        MonElement::Zero
    }

    fn canonical_tuple(comps: Vec<MonElement>) -> MonElement {
        if comps.iter().all(|c| c.is_zero()) {
            MonElement::Zero
        } else {
            MonElement::Tuple(comps)
        }
    }

    /// Components of a product element.
    pub fn components(&self, x: &MonElement) -> Option<Vec<MonElement>> {
        match (&*self.0, x) {
            (PointedSetKind::Product(fs), MonElement::Zero) => Some(vec![MonElement::Zero; fs.len()]),
            (PointedSetKind::Product(fs), MonElement::Tuple(v)) if v.len() == fs.len() => Some(v.clone()),
            _ => None,
        }
    }

    /// Product element from components (no membership check).
    pub fn tuple(comps: Vec<MonElement>) -> MonElement {
        Self::canonical_tuple(comps)
    }

    /// Class of a base element in a collapsed set.
    pub fn class_of(&self, x: &MonElement) -> MonElement {
        match &*self.0 {
            PointedSetKind::Collapse { kill, .. } if kill.contains(x) => MonElement::Zero,
            _ => x.clone(),
        }
    }

    pub fn contains(&self, x: &MonElement) -> bool {
        match &*self.0 {
            PointedSetKind::Finite(n) => match x {
                MonElement::Zero => true,
                MonElement::Word(w) => w.len() == 1 && w[0] >= 1 && (w[0] as usize) < n.len(),
                _ => false,
            },
            PointedSetKind::Monoid(m) => m.contains(x),
            PointedSetKind::Product(fs) => match x {
                MonElement::Zero => true,
                MonElement::Tuple(v) => {
                    v.len() == fs.len()
                        && !v.iter().all(|c| c.is_zero())
                        && v.iter().zip(fs).all(|(c, f)| f.contains(c))
                }
                _ => false,
            },
            PointedSetKind::Collapse { base, kill } => x.is_zero() || (base.contains(x) && !kill.contains(x)),
            PointedSetKind::Lazy(l) => l.contains(x),
        }
    }

    pub fn size_of(&self, x: &MonElement) -> usize {
        match (&*self.0, x) {
            (_, MonElement::Zero) => 0,
            (PointedSetKind::Finite(_), _) => 0,
            (PointedSetKind::Monoid(m), _) => m.size_of(x),
            (PointedSetKind::Product(fs), MonElement::Tuple(v)) => fs.iter().zip(v).map(|(f, c)| f.size_of(c)).sum(),
            (PointedSetKind::Collapse { base, .. }, _) => base.size_of(x),
            (PointedSetKind::Lazy(l), _) => l.size_of(x),
            _ => 0,
        }
    }

    pub fn finite_bound(&self) -> Option<usize> {
        match &*self.0 {
            PointedSetKind::Finite(_) => Some(0),
            PointedSetKind::Monoid(m) => m.finite_bound(),
            PointedSetKind::Product(fs) => fs.iter().map(|f| f.finite_bound()).sum(),
            PointedSetKind::Collapse { base, .. } => base.finite_bound(),
            PointedSetKind::Lazy(l) => l.finite_bound(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite_bound().is_some()
    }

    /// Elements of size at most `bound`, sorted by size then handle.
    pub fn elements_up_to(&self, bound: usize) -> Vec<(MonElement, usize)> {
        let mut out: Vec<(MonElement, usize)> = match &*self.0 {
            PointedSetKind::Finite(n) => (0..n.len()).map(|i| (Self::point(i), 0)).collect(),
            PointedSetKind::Monoid(m) => m.elements_up_to(bound),
            PointedSetKind::Product(fs) => {
                let mut acc: Vec<(Vec<MonElement>, usize)> = vec![(vec![], 0)];
                for f in fs {
                    let comp = f.elements_up_to(bound);
                    let mut next = Vec::new();
                    for (prefix, size) in &acc {
                        for (c, s) in &comp {
                            if size + s <= bound {
                                let mut p = prefix.clone();
                                p.push(c.clone());
                                next.push((p, size + s));
                            }
                        }
                    }
                    acc = next;
                }
                acc.into_iter().map(|(v, s)| (Self::canonical_tuple(v), s)).collect()
            }
            PointedSetKind::Collapse { base, kill } => base
                .elements_up_to(bound)
                .into_iter()
                .map(|(x, s)| if kill.contains(&x) { (MonElement::Zero, 0) } else { (x, s) })
                .collect(),
            PointedSetKind::Lazy(l) => l.elements_up_to(bound),
        };
        out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        out.dedup_by(|a, b| a.0 == b.0);
        out
    }

    /// All elements, if finite.
    pub fn elements(&self) -> Option<Vec<MonElement>> {
        let b = self.finite_bound()?;
        Some(self.elements_up_to(b).into_iter().map(|(x, _)| x).collect())
    }

    /// Domain for law checks: everything when small and finite (bound
    /// `None`), else elements of size at most `bound`.
    pub fn check_domain(&self, bound: usize) -> (Vec<(MonElement, usize)>, Option<usize>) {
        if let Some(fb) = self.finite_bound() {
            let all = self.elements_up_to(fb);
            if all.len() <= EXHAUSTIVE_LIMIT {
                return (all.into_iter().map(|(x, _)| (x, 0)).collect(), None);
            }
        }
        (self.elements_up_to(bound), Some(bound))
    }

    pub fn label(&self, x: &MonElement) -> String {
        match (&*self.0, x) {
            (PointedSetKind::Finite(n), MonElement::Zero) => n[0].clone(),
            (PointedSetKind::Finite(n), MonElement::Word(w)) if w.len() == 1 && (w[0] as usize) < n.len() => {
                n[w[0] as usize].clone()
            }
            (PointedSetKind::Monoid(m), _) => m.label(x),
            (PointedSetKind::Lazy(l), _) => l.label(x),
            (_, MonElement::Zero) => "*".into(),
            (PointedSetKind::Product(fs), MonElement::Tuple(v)) => format!(
                "({})",
                fs.iter().zip(v).map(|(f, c)| f.label(c)).collect::<Vec<_>>().join("; ")
            ),
            (PointedSetKind::Collapse { base, .. }, _) => format!("[{}]", base.label(x)),
            _ => format!("{x:?}"),
        }
    }

    pub fn parse(&self, s: &str) -> Option<MonElement> {
        let s = s.trim();
        let parsed = match &*self.0 {
            PointedSetKind::Finite(n) => n.iter().position(|m| m == s).map(Self::point),
            PointedSetKind::Monoid(m) => m.parse(s).ok(),
            PointedSetKind::Lazy(l) => l.parse(s),
            PointedSetKind::Product(fs) => {
                if s == "*" {
                    Some(MonElement::Zero)
                } else {
                    let inner = s.strip_prefix('(')?.strip_suffix(')')?;
                    let parts = split_top_level(inner, ";");
                    if parts.len() != fs.len() {
                        return None;
                    }
                    let comps = fs
                        .iter()
                        .zip(&parts)
                        .map(|(f, p)| f.parse(p))
                        .collect::<Option<Vec<_>>>()?;
                    Some(Self::canonical_tuple(comps))
                }
            }
            PointedSetKind::Collapse { base, .. } => {
                if s == "*" {
                    Some(MonElement::Zero)
                } else {
                    let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
                    base.parse(inner).map(|x| self.class_of(&x))
                }
            }
        };
        parsed.filter(|x| self.contains(x))
    }
}
