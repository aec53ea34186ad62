use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::element::split_top_level;
use super::{AxiomReport, FiniteAbsMonoid, Law, MonElement, SubMonoid};
use crate::directed_space::Space;
use crate::error::{Error, Result};

/// Above this many elements a finite monoid is checked like an infinite one,
/// i.e. up to the size bound.
const EXHAUSTIVE_LIMIT: usize = 64;
/// Largest carrier materialized by [`AbsMonoid::to_table`].
const TABLE_LIMIT: usize = 4096;

/// Evaluable absorption monoid whose elements are generated on demand.
///
/// Implementors must hand out canonical handles, use [`MonElement::Zero`] for
/// the absorbing element, and keep `mul` total on their own handles.
pub trait LazyMonoid: Send + Sync + fmt::Debug {
    fn describe(&self) -> String;
    fn contains(&self, x: &MonElement) -> bool;
    fn mul(&self, a: &MonElement, b: &MonElement) -> MonElement;
    fn size_of(&self, x: &MonElement) -> usize;
    /// All elements of size at most `bound`, including `Zero` and the unit.
    fn elements_up_to(&self, bound: usize) -> Vec<(MonElement, usize)>;
    /// `Some(b)` when the monoid is finite and every element has size `<= b`.
    fn finite_bound(&self) -> Option<usize>;
    fn label(&self, x: &MonElement) -> String;
    fn parse(&self, s: &str) -> Option<MonElement>;
    fn one(&self) -> MonElement {
        MonElement::One
    }
}

/// Letters of a free absorption monoid. The basepoint of the pointed alphabet
/// is not stored: it becomes the zero of the monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeAlphabet {
    pub letters: Vec<String>,
}

impl FreeAlphabet {
    fn single_char(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    pub fn word_label(&self, w: &[u32]) -> String {
        let parts: Vec<&str> = w.iter().map(|&i| self.letters[i as usize].as_str()).collect();
        if self.single_char() {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    pub fn parse_word(&self, s: &str) -> Option<Vec<u32>> {
        let find = |p: &str| self.letters.iter().position(|l| l == p).map(|i| i as u32);
        if s.contains('.') {
            s.split('.').map(find).collect()
        } else if let Some(i) = find(s) {
            Some(vec![i])
        } else if self.single_char() {
            s.chars().map(|c| find(&c.to_string())).collect()
        } else {
            None
        }
    }
}

#[derive(Debug)]
pub enum MonoidKind {
    Table(FiniteAbsMonoid),
    Free(FreeAlphabet),
    Path(Space),
    Product(Vec<AbsMonoid>),
    Coproduct(Vec<AbsMonoid>),
    Quotient { base: AbsMonoid, kill: SubMonoid },
    Opposite(AbsMonoid),
    Lazy(Arc<dyn LazyMonoid>),
}

/// An absorption monoid: finite table, free monoid, path (trace) monoid, or a
/// construction over other absorption monoids. Cheap to clone.
#[derive(Clone)]
pub struct AbsMonoid(Arc<MonoidKind>);

impl fmt::Debug for AbsMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbsMonoid({})", self.describe())
    }
}

impl PartialEq for AbsMonoid {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        use MonoidKind::*;
        match (&*self.0, &*other.0) {
            (Table(a), Table(b)) => a == b,
            (Free(a), Free(b)) => a == b,
            (Path(a), Path(b)) => a == b,
            (Product(a), Product(b)) | (Coproduct(a), Coproduct(b)) => a == b,
            (Quotient { base: a, kill: ka }, Quotient { base: b, kill: kb }) => a == b && ka == kb,
            (Opposite(a), Opposite(b)) => a == b,
            (Lazy(a), Lazy(b)) => Arc::ptr_eq(a, b),
            _ => false,
        }
    }
}

impl AbsMonoid {
    fn wrap(kind: MonoidKind) -> Self {
        AbsMonoid(Arc::new(kind))
    }

    pub fn kind(&self) -> &MonoidKind {
        &self.0
    }

    /// Wrap a table, refusing it unless it satisfies all five laws.
    pub fn from_table(table: FiniteAbsMonoid) -> Result<Self> {
        let report = table.check_axioms();
        if !report.is_ok() {
            return Err(Error::NotAMonoid(report.to_string()));
        }
        Ok(Self::wrap(MonoidKind::Table(table)))
    }

    pub fn two_element() -> Self {
        Self::from_table(FiniteAbsMonoid::two_element()).expect("{0,1} is an absorption monoid")
    }

    pub fn trivial() -> Self {
        Self::from_table(FiniteAbsMonoid::trivial()).expect("trivial monoid")
    }

    /// Free absorption monoid on the non-basepoint letters.
    pub fn free<S: AsRef<str>>(letters: &[S]) -> Self {
        Self::wrap(MonoidKind::Free(FreeAlphabet {
            letters: letters.iter().map(|s| s.as_ref().to_string()).collect(),
        }))
    }

    pub fn path(space: Space) -> Self {
        Self::wrap(MonoidKind::Path(space))
    }

    pub fn lazy(inner: Arc<dyn LazyMonoid>) -> Self {
        Self::wrap(MonoidKind::Lazy(inner))
    }

    /// Componentwise product; zero is the all-zeros tuple, one the all-ones.
    pub fn product(factors: Vec<AbsMonoid>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::TypeMismatch("product of an empty family".into()));
        }
        Ok(Self::wrap(MonoidKind::Product(factors)))
    }

    /// Finite-support tuples with componentwise product. For a finite family
    /// the support condition is vacuous, so the carrier equals the product's.
    pub fn coproduct(summands: Vec<AbsMonoid>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::TypeMismatch("coproduct of an empty family".into()));
        }
        Ok(Self::wrap(MonoidKind::Coproduct(summands)))
    }

    /// `M/N`: an element becomes zero iff it factors as `x*n*y` with `n` in
    /// `N`; every other element stays its own class.
    pub fn quotient(&self, kill: SubMonoid) -> Result<Self> {
        for g in kill.generators() {
            if !self.contains(g) {
                return Err(Error::NotASubmonoid(format!(
                    "generator {g:?} is not an element of {}",
                    self.describe()
                )));
            }
        }
        Ok(Self::wrap(MonoidKind::Quotient {
            base: self.clone(),
            kill,
        }))
    }

    /// Same elements, multiplication reversed.
    pub fn opposite(&self) -> Self {
        if let MonoidKind::Opposite(inner) = &*self.0 {
            return inner.clone();
        }
        Self::wrap(MonoidKind::Opposite(self.clone()))
    }

    pub fn as_table(&self) -> Option<&FiniteAbsMonoid> {
        match &*self.0 {
            MonoidKind::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_free(&self) -> Option<&FreeAlphabet> {
        match &*self.0 {
            MonoidKind::Free(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_space(&self) -> Option<&Space> {
        match &*self.0 {
            MonoidKind::Path(s) => Some(s),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match &*self.0 {
            MonoidKind::Table(t) => format!("table monoid {{{}}}", t.names().join(",")),
            MonoidKind::Free(a) => format!("free monoid on {{{}}}", a.letters.join(",")),
            MonoidKind::Path(s) => format!("trace monoid of {}", s.describe()),
            MonoidKind::Product(fs) => format!(
                "product({})",
                fs.iter().map(|f| f.describe()).collect::<Vec<_>>().join(" x ")
            ),
            MonoidKind::Coproduct(fs) => format!(
                "coproduct({})",
                fs.iter().map(|f| f.describe()).collect::<Vec<_>>().join(" + ")
            ),
            MonoidKind::Quotient { base, kill } => format!(
                "{} / <{}>",
                base.describe(),
                kill.generators().iter().map(|g| base.label(g)).collect::<Vec<_>>().join(",")
            ),
            MonoidKind::Opposite(m) => format!("opposite of {}", m.describe()),
            MonoidKind::Lazy(l) => l.describe(),
        }
    }

    // ---- handles -------------------------------------------------------

    /// Handle of table index `i`.
    pub fn table_handle(t: &FiniteAbsMonoid, i: usize) -> MonElement {
        if i == t.zero() {
            MonElement::Zero
        } else if i == t.one() {
            MonElement::One
        } else {
            MonElement::letter(i as u32)
        }
    }

    /// Table index of a handle, if it is one.
    pub fn table_index(t: &FiniteAbsMonoid, x: &MonElement) -> Option<usize> {
        match x {
            MonElement::Zero => Some(t.zero()),
            MonElement::One if t.one() != t.zero() => Some(t.one()),
            MonElement::Word(w) if w.len() == 1 => {
                let i = w[0] as usize;
                (i < t.len() && i != t.zero() && i != t.one()).then_some(i)
            }
            _ => None,
        }
    }

    /// Canonical unit. In a trivial monoid this is `Zero`.
    pub fn one(&self) -> MonElement {
        match &*self.0 {
            MonoidKind::Table(t) => Self::table_handle(t, t.one()),
            MonoidKind::Free(_) | MonoidKind::Path(_) => MonElement::One,
            MonoidKind::Product(fs) | MonoidKind::Coproduct(fs) => {
                self.canonical_tuple(fs.iter().map(|f| f.one()).collect())
            }
            MonoidKind::Quotient { base, .. } => self.quotient_canonical(&base.one()),
            MonoidKind::Opposite(m) => m.one(),
            MonoidKind::Lazy(l) => l.one(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.one().is_zero()
    }

    fn factors(&self) -> Option<&[AbsMonoid]> {
        match &*self.0 {
            MonoidKind::Product(fs) | MonoidKind::Coproduct(fs) => Some(fs),
            _ => None,
        }
    }

    fn canonical_tuple(&self, comps: Vec<MonElement>) -> MonElement {
        let fs = self.factors().expect("tuple canonicalization on a product kind");
        if comps.iter().all(|c| c.is_zero()) {
            MonElement::Zero
        } else if comps.iter().zip(fs).all(|(c, f)| *c == f.one()) {
            MonElement::One
        } else {
            MonElement::Tuple(comps)
        }
    }

    /// Components of a product element (zero and one expanded).
    pub fn components(&self, x: &MonElement) -> Option<Vec<MonElement>> {
        let fs = self.factors()?;
        match x {
            MonElement::Zero => Some(vec![MonElement::Zero; fs.len()]),
            MonElement::One => Some(fs.iter().map(|f| f.one()).collect()),
            MonElement::Tuple(v) if v.len() == fs.len() => Some(v.clone()),
            _ => None,
        }
    }

    /// Build a product element from components.
    pub fn tuple(&self, comps: Vec<MonElement>) -> Result<MonElement> {
        let fs = self
            .factors()
            .ok_or_else(|| Error::TypeMismatch(format!("{} is not a product", self.describe())))?;
        if comps.len() != fs.len() {
            return Err(Error::TypeMismatch(format!(
                "tuple of length {} for {} factors",
                comps.len(),
                fs.len()
            )));
        }
        for (c, f) in comps.iter().zip(fs) {
            if !f.contains(c) {
                return Err(Error::foreign(format!("{c:?}"), f.describe()));
            }
        }
        Ok(self.canonical_tuple(comps))
    }

    fn quotient_canonical(&self, x: &MonElement) -> MonElement {
        match &*self.0 {
            MonoidKind::Quotient { base, kill } => {
                if kill.ideal_contains(base, x) {
                    MonElement::Zero
                } else {
                    x.clone()
                }
            }
            _ => x.clone(),
        }
    }

    /// Map an element of the base of a quotient to its class.
    pub fn class_of(&self, x: &MonElement) -> Result<MonElement> {
        match &*self.0 {
            MonoidKind::Quotient { base, .. } => {
                if !base.contains(x) {
                    return Err(Error::foreign(base.label(x), base.describe()));
                }
                Ok(self.quotient_canonical(x))
            }
            _ => Err(Error::TypeMismatch(format!("{} is not a quotient", self.describe()))),
        }
    }

    pub fn contains(&self, x: &MonElement) -> bool {
        match &*self.0 {
            MonoidKind::Table(t) => Self::table_index(t, x).is_some(),
            MonoidKind::Free(a) => match x {
                MonElement::Zero | MonElement::One => true,
                MonElement::Word(w) => !w.is_empty() && w.iter().all(|&i| (i as usize) < a.letters.len()),
                MonElement::Tuple(_) => false,
            },
            MonoidKind::Path(s) => match x {
                MonElement::Zero | MonElement::One => true,
                MonElement::Word(w) => s.path_valid(w[0], &w[1..]),
                MonElement::Tuple(_) => false,
            },
            MonoidKind::Product(fs) | MonoidKind::Coproduct(fs) => match x {
                MonElement::Zero => true,
                MonElement::One => !self.is_trivial(),
                MonElement::Tuple(v) => {
                    v.len() == fs.len()
                        && v.iter().zip(fs.iter()).all(|(c, f)| f.contains(c))
                        && self.canonical_tuple(v.clone()) == *x
                }
                MonElement::Word(_) => false,
            },
            MonoidKind::Quotient { base, kill } => match x {
                MonElement::Zero => true,
                _ => base.contains(x) && !kill.ideal_contains(base, x),
            },
            MonoidKind::Opposite(m) => m.contains(x),
            MonoidKind::Lazy(l) => l.contains(x),
        }
    }

    fn check_member(&self, x: &MonElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::foreign(format!("{x:?}"), self.describe()))
        }
    }

    /// Product of two handles of this monoid.
    pub fn multiply(&self, a: &MonElement, b: &MonElement) -> Result<MonElement> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(self.mul(a, b))
    }

    /// Product without membership checks. Both arguments must be handles of
    /// this monoid.
    pub fn mul(&self, a: &MonElement, b: &MonElement) -> MonElement {
        use MonElement::*;
        match (a, b) {
            (Zero, _) | (_, Zero) => return Zero,
            (One, x) | (x, One) if !matches!(&*self.0, MonoidKind::Lazy(_)) => return x.clone(),
            _ => {}
        }
        match &*self.0 {
            MonoidKind::Table(t) => {
                let (i, j) = (
                    Self::table_index(t, a).expect("table handle"),
                    Self::table_index(t, b).expect("table handle"),
                );
                Self::table_handle(t, t.mul(i, j))
            }
            MonoidKind::Free(_) => {
                let (Word(x), Word(y)) = (a, b) else { unreachable!() };
                let mut w = x.clone();
                w.extend_from_slice(y);
                Word(w)
            }
            MonoidKind::Path(s) => {
                let (Word(p), Word(q)) = (a, b) else { unreachable!() };
                if s.path_end(p[0], &p[1..]) != q[0] {
                    return Zero;
                }
                let mut w = p.clone();
                w.extend_from_slice(&q[1..]);
                Word(w)
            }
            MonoidKind::Product(fs) | MonoidKind::Coproduct(fs) => {
                let (x, y) = (self.components(a).unwrap(), self.components(b).unwrap());
                let comps = fs
                    .iter()
                    .zip(x.iter().zip(y.iter()))
                    .map(|(f, (u, v))| f.mul(u, v))
                    .collect();
                self.canonical_tuple(comps)
            }
            MonoidKind::Quotient { base, .. } => {
                let p = base.mul(a, b);
                self.quotient_canonical(&p)
            }
            MonoidKind::Opposite(m) => m.mul(b, a),
            MonoidKind::Lazy(l) => l.mul(a, b),
        }
    }

    /// Size used by bounded checks: word or path length, summed over tuple
    /// components; zero for table elements, `Zero` and `One`.
    pub fn size_of(&self, x: &MonElement) -> usize {
        match (&*self.0, x) {
            (_, MonElement::Zero) | (_, MonElement::One) => 0,
            (MonoidKind::Table(_), _) => 0,
            (MonoidKind::Free(_), MonElement::Word(w)) => w.len(),
            (MonoidKind::Path(_), MonElement::Word(w)) => w.len() - 1,
            (MonoidKind::Product(fs) | MonoidKind::Coproduct(fs), MonElement::Tuple(v)) => {
                fs.iter().zip(v).map(|(f, c)| f.size_of(c)).sum()
            }
            (MonoidKind::Quotient { base, .. }, _) => base.size_of(x),
            (MonoidKind::Opposite(m), _) => m.size_of(x),
            (MonoidKind::Lazy(l), _) => l.size_of(x),
            _ => 0,
        }
    }

    /// `Some(b)` iff the monoid is finite with every element of size `<= b`.
    pub fn finite_bound(&self) -> Option<usize> {
        match &*self.0 {
            MonoidKind::Table(_) => Some(0),
            MonoidKind::Free(a) => a.letters.is_empty().then_some(0),
            MonoidKind::Path(s) => s.max_path_length(),
            MonoidKind::Product(fs) | MonoidKind::Coproduct(fs) => {
                fs.iter().map(|f| f.finite_bound()).sum()
            }
            MonoidKind::Quotient { base, .. } => base.finite_bound(),
            MonoidKind::Opposite(m) => m.finite_bound(),
            MonoidKind::Lazy(l) => l.finite_bound(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite_bound().is_some()
    }

    /// All elements of size at most `bound`, sorted by size then handle.
    pub fn elements_up_to(&self, bound: usize) -> Vec<(MonElement, usize)> {
        let mut out: Vec<(MonElement, usize)> = match &*self.0 {
            MonoidKind::Table(t) => (0..t.len()).map(|i| (Self::table_handle(t, i), 0)).collect(),
            MonoidKind::Free(a) => {
                let mut out = vec![(MonElement::Zero, 0), (MonElement::One, 0)];
                let mut frontier: Vec<Vec<u32>> = vec![vec![]];
                for len in 1..=bound {
                    if a.letters.is_empty() {
                        break;
                    }
                    let mut next = Vec::with_capacity(frontier.len() * a.letters.len());
                    for w in &frontier {
                        for l in 0..a.letters.len() as u32 {
                            let mut w2 = w.clone();
                            w2.push(l);
                            next.push(w2);
                        }
                    }
                    out.extend(next.iter().map(|w| (MonElement::Word(w.clone()), len)));
                    frontier = next;
                }
                out
            }
            MonoidKind::Path(s) => {
                let mut out = vec![(MonElement::Zero, 0), (MonElement::One, 0)];
                for v in 0..s.vertex_count() as u32 {
                    for steps in s.paths_from(v, bound) {
                        let len = steps.len();
                        let mut w = vec![v];
                        w.extend(steps);
                        out.push((MonElement::Word(w), len));
                    }
                }
                out
            }
            MonoidKind::Product(fs) | MonoidKind::Coproduct(fs) => {
                let per: Vec<Vec<(MonElement, usize)>> = fs.iter().map(|f| f.elements_up_to(bound)).collect();
                let mut acc: Vec<(Vec<MonElement>, usize)> = vec![(vec![], 0)];
                for comp in &per {
                    let mut next = Vec::new();
                    for (prefix, size) in &acc {
                        for (c, s) in comp {
                            if size + s <= bound {
                                let mut p = prefix.clone();
                                p.push(c.clone());
                                next.push((p, size + s));
                            }
                        }
                    }
                    acc = next;
                }
                acc.into_iter().map(|(v, s)| (self.canonical_tuple(v), s)).collect()
            }
            MonoidKind::Quotient { base, .. } => base
                .elements_up_to(bound)
                .into_iter()
                .map(|(x, s)| {
                    let c = self.quotient_canonical(&x);
                    let s = if c.is_zero() { 0 } else { s };
                    (c, s)
                })
                .collect(),
            MonoidKind::Opposite(m) => m.elements_up_to(bound),
            MonoidKind::Lazy(l) => l.elements_up_to(bound),
        };
        out.sort_by(|a, b| (a.1, &a.0).cmp(&(b.1, &b.0)));
        out.dedup_by(|a, b| a.0 == b.0);
        out
    }

    /// Every element, if the monoid is finite.
    pub fn elements(&self) -> Option<Vec<MonElement>> {
        let b = self.finite_bound()?;
        Some(self.elements_up_to(b).into_iter().map(|(x, _)| x).collect())
    }

    pub fn label(&self, x: &MonElement) -> String {
        match (&*self.0, x) {
            (MonoidKind::Table(t), _) => match Self::table_index(t, x) {
                Some(i) => t.name(i).to_string(),
                None => format!("{x:?}"),
            },
            (_, MonElement::Zero) => "0".into(),
            (MonoidKind::Lazy(l), _) => l.label(x),
            (_, MonElement::One) => "1".into(),
            (MonoidKind::Free(a), MonElement::Word(w)) => a.word_label(w),
            (MonoidKind::Path(s), MonElement::Word(w)) => s.label_path(w[0], &w[1..]),
            (MonoidKind::Product(fs) | MonoidKind::Coproduct(fs), MonElement::Tuple(v)) => format!(
                "({})",
                fs.iter().zip(v).map(|(f, c)| f.label(c)).collect::<Vec<_>>().join("; ")
            ),
            (MonoidKind::Quotient { base, .. }, _) => format!("[{}]", base.label(x)),
            (MonoidKind::Opposite(m), _) => m.label(x),
            _ => format!("{x:?}"),
        }
    }

    /// Inverse of [`AbsMonoid::label`].
    pub fn parse(&self, s: &str) -> Result<MonElement> {
        let s = s.trim();
        let not_found = || Error::foreign(s, self.describe());
        if let MonoidKind::Table(t) = &*self.0 {
            return t.index_of(s).map(|i| Self::table_handle(t, i)).ok_or_else(not_found);
        }
        if let MonoidKind::Lazy(l) = &*self.0 {
            return l.parse(s).filter(|x| l.contains(x)).ok_or_else(not_found);
        }
        match s {
            "0" => return Ok(MonElement::Zero),
            "1" => return Ok(self.one()),
            _ => {}
        }
        let parsed = match &*self.0 {
            MonoidKind::Free(a) => a.parse_word(s).map(MonElement::Word),
            MonoidKind::Path(sp) => sp.parse_path(s).map(|(v, steps)| {
                let mut w = vec![v];
                w.extend(steps);
                MonElement::Word(w)
            }),
            MonoidKind::Product(fs) | MonoidKind::Coproduct(fs) => {
                let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(not_found)?;
                let parts = split_top_level(inner, ";");
                if parts.len() != fs.len() {
                    return Err(not_found());
                }
                let comps = fs
                    .iter()
                    .zip(parts.iter())
                    .map(|(f, p)| f.parse(p))
                    .collect::<Result<Vec<_>>>()?;
                Some(self.canonical_tuple(comps))
            }
            MonoidKind::Quotient { base, .. } => {
                let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
                Some(self.class_of(&base.parse(inner)?)?)
            }
            MonoidKind::Opposite(m) => Some(m.parse(s)?),
            MonoidKind::Table(_) | MonoidKind::Lazy(_) => unreachable!(),
        };
        parsed.filter(|x| self.contains(x)).ok_or_else(not_found)
    }

    /// True iff `m = x * g * y` for some `x`, `y` in this monoid.
    pub fn divides(&self, g: &MonElement, m: &MonElement) -> bool {
        use MonElement::*;
        if m.is_zero() || *g == self.one() {
            return true;
        }
        if g.is_zero() {
            return false;
        }
        match &*self.0 {
            MonoidKind::Table(t) => {
                let (gi, mi) = match (Self::table_index(t, g), Self::table_index(t, m)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return false,
                };
                (0..t.len()).any(|x| (0..t.len()).any(|y| t.mul(t.mul(x, gi), y) == mi))
            }
            MonoidKind::Free(_) => match (g, m) {
                (Word(gw), Word(mw)) => mw.windows(gw.len()).any(|w| w == gw.as_slice()),
                _ => false,
            },
            MonoidKind::Path(s) => match (g, m) {
                (Word(gw), Word(mw)) => {
                    let (gstart, gsteps) = (gw[0], &gw[1..]);
                    let (mstart, msteps) = (mw[0], &mw[1..]);
                    if gsteps.len() > msteps.len() {
                        return false;
                    }
                    (0..=msteps.len() - gsteps.len()).any(|i| {
                        &msteps[i..i + gsteps.len()] == gsteps && s.path_end(mstart, &msteps[..i]) == gstart
                    })
                }
                _ => false,
            },
            MonoidKind::Product(fs) | MonoidKind::Coproduct(fs) => {
                let (gc, mc) = (self.components(g).unwrap(), self.components(m).unwrap());
                fs.iter().zip(gc.iter().zip(mc.iter())).all(|(f, (a, b))| f.divides(a, b))
            }
            MonoidKind::Quotient { base, .. } => base.divides(g, m),
            MonoidKind::Opposite(b) => b.divides(g, m),
            MonoidKind::Lazy(l) => {
                let bound = l.finite_bound().unwrap_or_else(|| l.size_of(m) + 1);
                let elems = l.elements_up_to(bound);
                elems
                    .iter()
                    .any(|(x, _)| elems.iter().any(|(y, _)| l.mul(&l.mul(x, g), y) == *m))
            }
        }
    }

    /// Materialize a finite monoid as a table. Labels become element names;
    /// zero is index 0 and one index 1 (unless trivial).
    pub fn to_table(&self) -> Option<FiniteAbsMonoid> {
        if let MonoidKind::Table(t) = &*self.0 {
            return Some(t.clone());
        }
        let mut elems = self.elements()?;
        if elems.len() > TABLE_LIMIT {
            return None;
        }
        let one = self.one();
        elems.retain(|x| !x.is_zero() && *x != one);
        let mut ordered = vec![MonElement::Zero];
        if !one.is_zero() {
            ordered.push(one);
        }
        ordered.extend(elems);
        let index = |x: &MonElement| ordered.iter().position(|y| y == x).expect("closed");
        let names = ordered.iter().map(|x| self.label(x)).collect();
        let one_idx = if ordered.len() > 1 && !self.is_trivial() { 1 } else { 0 };
        let table = ordered
            .iter()
            .map(|a| ordered.iter().map(|b| index(&self.mul(a, b))).collect())
            .collect();
        Some(FiniteAbsMonoid::new(names, 0, one_idx, table))
    }

    /// Elements over which law checks run: all of them when the monoid is
    /// small and finite (exhaustive, bound `None`), otherwise everything of
    /// size at most `bound`.
    pub fn check_domain(&self, bound: usize) -> (Vec<(MonElement, usize)>, Option<usize>) {
        if let Some(fb) = self.finite_bound() {
            let all = self.elements_up_to(fb);
            if all.len() <= EXHAUSTIVE_LIMIT {
                let all = all.into_iter().map(|(x, _)| (x, 0)).collect();
                return (all, None);
            }
        }
        (self.elements_up_to(bound), Some(bound))
    }

    /// Check the five laws on every triple of the check domain whose sizes
    /// sum to at most `bound` (exhaustive for small finite monoids).
    pub fn check_axioms_bounded(&self, bound: usize) -> AxiomReport {
        let (dom, scope) = self.check_domain(bound);
        let mut report = AxiomReport::new(self.describe(), scope);
        let one = self.one();
        let lab = |x: &MonElement| self.label(x);
        let per_a: Vec<AxiomReport> = dom
            .par_iter()
            .map(|(a, sa)| {
                let mut r = AxiomReport::default();
                for (b, sb) in dom.iter().filter(|(_, sb)| sa + sb <= bound) {
                    let ab = self.mul(a, b);
                    for (c, _) in dom.iter().filter(|(_, sc)| sa + sb + sc <= bound) {
                        r.checked += 1;
                        let lhs = self.mul(a, &self.mul(b, c));
                        let rhs = self.mul(&ab, c);
                        if lhs != rhs {
                            r.violation(
                                Law::Associativity,
                                vec![lab(a), lab(b), lab(c)],
                                format!("{} != {}", lab(&lhs), lab(&rhs)),
                            );
                        }
                    }
                }
                let checks = [
                    (Law::RightUnit, self.mul(a, &one), a.clone()),
                    (Law::LeftUnit, self.mul(&one, a), a.clone()),
                    (Law::RightAbsorption, self.mul(a, &MonElement::Zero), MonElement::Zero),
                    (Law::LeftAbsorption, self.mul(&MonElement::Zero, a), MonElement::Zero),
                ];
                for (law, got, want) in checks {
                    r.checked += 1;
                    if got != want {
                        r.violation(law, vec![lab(a)], format!("got {}", lab(&got)));
                    }
                    if !self.contains(&got) {
                        r.violation(Law::ForeignImage, vec![lab(a)], format!("{got:?}"));
                    }
                }
                r
            })
            .collect();
        for r in per_a {
            report.checked += r.checked;
            report.violations.extend(r.violations);
        }
        report.finish()
    }

    /// Elements of this monoid generated by `gens` under multiplication, up to
    /// size `bound` (all of them when finite). Always contains `Zero`.
    pub fn closure(&self, gens: &[MonElement], bound: usize) -> BTreeSet<MonElement> {
        let mut set: BTreeSet<MonElement> = BTreeSet::new();
        set.insert(MonElement::Zero);
        let limit = self.finite_bound().map_or(bound, |b| b.max(bound));
        let mut frontier: Vec<MonElement> = gens.to_vec();
        for g in gens {
            set.insert(g.clone());
        }
        while let Some(x) = frontier.pop() {
            for g in gens {
                for p in [self.mul(&x, g), self.mul(g, &x)] {
                    if self.size_of(&p) <= limit && set.insert(p.clone()) {
                        frontier.push(p);
                    }
                }
            }
        }
        set
    }
}

/// Free absorption monoid on a pointed alphabet: the basepoint becomes zero,
/// every other letter a generator.
pub fn free_absorption_monoid<S: AsRef<str>>(alphabet: &[S], basepoint: &str) -> Result<AbsMonoid> {
    if !alphabet.iter().any(|l| l.as_ref() == basepoint) {
        return Err(Error::TypeMismatch(format!(
            "basepoint {basepoint} is not a letter of the alphabet"
        )));
    }
    let letters: Vec<&str> = alphabet
        .iter()
        .map(|l| l.as_ref())
        .filter(|l| *l != basepoint)
        .collect();
    Ok(AbsMonoid::free(&letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str, m: &AbsMonoid) -> MonElement {
        m.parse(s).unwrap()
    }

    #[test]
    fn unit_and_absorption() {
        let free = AbsMonoid::free(&["a", "b"]);
        let ab = word("ab", &free);
        assert_eq!(free.multiply(&MonElement::One, &ab).unwrap(), ab);
        assert_eq!(free.multiply(&MonElement::Zero, &ab).unwrap(), MonElement::Zero);
        let z3 = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(3)).unwrap();
        let g = word("g", &z3);
        assert_eq!(z3.multiply(&MonElement::One, &g).unwrap(), g);
        assert_eq!(z3.multiply(&g, &MonElement::Zero).unwrap(), MonElement::Zero);
    }

    #[test]
    fn free_concatenation() {
        let free = AbsMonoid::free(&["a", "b"]);
        let p = free.multiply(&word("ab", &free), &word("ba", &free)).unwrap();
        assert_eq!(free.label(&p), "abba");
    }

    #[test]
    fn foreign_elements_are_rejected() {
        let free = AbsMonoid::free(&["a"]);
        let err = free.multiply(&MonElement::letter(3), &MonElement::One).unwrap_err();
        assert!(matches!(err, Error::ForeignElement { .. }));
        let two = AbsMonoid::two_element();
        assert!(two.multiply(&MonElement::letter(2), &MonElement::One).is_err());
    }

    #[test]
    fn free_on_basepoint_only_is_two_element() {
        let m = free_absorption_monoid(&["*"], "*").unwrap();
        assert_eq!(m.elements().unwrap().len(), 2);
        assert!(m.to_table().unwrap().is_isomorphic(&FiniteAbsMonoid::two_element()));
    }

    #[test]
    fn free_powers_add() {
        let m = free_absorption_monoid(&["*", "a"], "*").unwrap();
        for n in 1..5usize {
            for k in 1..5usize {
                let p = m.mul(&MonElement::Word(vec![0; n]), &MonElement::Word(vec![0; k]));
                assert_eq!(p, MonElement::Word(vec![0; n + k]));
            }
        }
    }

    #[test]
    fn free_word_count_up_to_three() {
        let m = free_absorption_monoid(&["*", "a", "b"], "*").unwrap();
        let nonzero = m.elements_up_to(3).into_iter().filter(|(x, _)| !x.is_zero()).count();
        assert_eq!(nonzero, 15);
    }

    #[test]
    fn product_is_componentwise() {
        let two = AbsMonoid::two_element();
        let p = AbsMonoid::product(vec![two.clone(), two.clone()]).unwrap();
        assert_eq!(p.elements().unwrap().len(), 4);
        let x = p.tuple(vec![MonElement::One, MonElement::Zero]).unwrap();
        assert_eq!(p.mul(&x, &MonElement::One), x);
        assert!(p.check_axioms_bounded(0).is_ok());
    }

    #[test]
    fn unary_product_is_isomorphic() {
        let z3 = AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(3)).unwrap();
        let p = AbsMonoid::product(vec![z3.clone()]).unwrap();
        assert!(p.to_table().unwrap().is_isomorphic(z3.as_table().unwrap()));
    }

    #[test]
    fn coproduct_injections_annihilate() {
        let two = AbsMonoid::two_element();
        let three = AbsMonoid::from_table(FiniteAbsMonoid::with_default_names(vec![
            vec![0, 0, 0],
            vec![0, 1, 2],
            vec![0, 2, 2],
        ]))
        .unwrap();
        let c = AbsMonoid::coproduct(vec![two.clone(), three.clone()]).unwrap();
        assert_eq!(c.elements().unwrap().len(), 6);
        assert!(c.check_axioms_bounded(0).is_ok());
        let left = c.tuple(vec![MonElement::One, MonElement::Zero]).unwrap();
        let right = c.tuple(vec![MonElement::Zero, MonElement::letter(2)]).unwrap();
        assert_eq!(c.mul(&left, &right), MonElement::Zero);
    }

    #[test]
    fn opposite_reverses() {
        let free = AbsMonoid::free(&["a", "b"]);
        let op = free.opposite();
        let p = op.mul(&word("a", &free), &word("b", &free));
        assert_eq!(free.label(&p), "ba");
        assert_eq!(op.opposite(), free);
    }

    #[test]
    fn labels_round_trip() {
        let free = AbsMonoid::free(&["a", "b"]);
        let p = AbsMonoid::product(vec![free.clone(), AbsMonoid::two_element()]).unwrap();
        for (x, _) in p.elements_up_to(2) {
            assert_eq!(p.parse(&p.label(&x)).unwrap(), x, "{}", p.label(&x));
        }
    }

    #[test]
    fn free_axioms_bounded() {
        let free = AbsMonoid::free(&["a", "b"]);
        let r = free.check_axioms_bounded(6);
        assert!(r.is_ok(), "{r}");
        assert_eq!(r.bound, Some(6));
    }
}
