use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::extend_set::PairSpace;
use super::ScalarChange;
use crate::absorption_monoid::{AbsMonoid, LazyMonoid, MonElement, MonoidMorphism};
use crate::error::{Error, Result};
use crate::pointed_modules::{Carrier, LeftModule, ModuleMorphism};

/// Three-valued equality for presentations whose rewriting system did not
/// saturate within budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Equality {
    Equal,
    Different,
    Undecided,
}

/// A letter, `1` or `0`, as the image of a pair `<t', m>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sym {
    Zero,
    One,
    Letter(u32),
}

/// A word over the letters (empty = `1`) or `0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Value {
    Zero,
    Word(Vec<u32>),
}

impl Value {
    fn from_syms(syms: impl IntoIterator<Item = Sym>) -> Value {
        let mut w = Vec::new();
        for s in syms {
            match s {
                Sym::Zero => return Value::Zero,
                Sym::One => {}
                Sym::Letter(l) => w.push(l),
            }
        }
        Value::Word(w)
    }
}

/// Shortlex order; `0` below every word.
fn shortlex_greater(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Zero, _) => false,
        (Value::Word(_), Value::Zero) => true,
        (Value::Word(x), Value::Word(y)) => (x.len(), x) > (y.len(), y),
    }
}

#[derive(Clone, Debug, Default)]
struct Rules {
    rules: Vec<(Vec<u32>, Value)>,
}

impl Rules {
    /// Irreducible form: a stack holds the irreducible prefix, and every
    /// rewrite pushes its right-hand side back onto the input.
    fn normalize(&self, input: &[u32]) -> Value {
        let mut pending: VecDeque<u32> = input.iter().copied().collect();
        let mut stack: Vec<u32> = Vec::with_capacity(input.len());
        while let Some(a) = pending.pop_front() {
            stack.push(a);
            if let Some((lhs, rhs)) = self.rules.iter().find(|(lhs, _)| stack.ends_with(lhs)) {
                stack.truncate(stack.len() - lhs.len());
                match rhs {
                    Value::Zero => return Value::Zero,
                    Value::Word(r) => {
                        for &x in r.iter().rev() {
                            pending.push_front(x);
                        }
                    }
                }
            }
        }
        Value::Word(stack)
    }

    fn nf(&self, v: &Value) -> Value {
        match v {
            Value::Zero => Value::Zero,
            Value::Word(w) => self.normalize(w),
        }
    }

    fn is_irreducible_extension(&self, w: &[u32]) -> bool {
        !self.rules.iter().any(|(lhs, _)| w.ends_with(lhs))
    }
}

fn concat(parts: &[&[u32]]) -> Vec<u32> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn join(prefix: &[u32], v: &Value, suffix: &[u32]) -> Value {
    match v {
        Value::Zero => Value::Zero,
        Value::Word(w) => Value::Word(concat(&[prefix, w, suffix])),
    }
}

/// Equations produced by overlapping `l1 -> r1` (left) with `l2 -> r2`.
fn critical_pairs(l1: &[u32], r1: &Value, l2: &[u32], r2: &Value, out: &mut Vec<(Value, Value)>) {
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            out.push((join(&[], r1, &l2[k..]), join(&l1[..l1.len() - k], r2, &[])));
        }
    }
}

/// The monoid part of `l_!(M, T)`: finite non-empty products of classes
/// `<t', m>` modulo the extension equations, presented by a shortlex
/// rewriting system completed within a budget.
pub struct ExtensionMonoid {
    tprime: AbsMonoid,
    carrier: AbsMonoid,
    /// All elements of `T'`, zero included, in enumeration order.
    scalars: Vec<MonElement>,
    pairs: PairSpace,
    /// Image of each pair node.
    sym: Vec<Sym>,
    /// Least pair node of each letter.
    letter_rep: Vec<usize>,
    /// `act[s][letter]`.
    act: Vec<Vec<Sym>>,
    rules: Rules,
    saturated: bool,
    trivial: bool,
    finite_bound: Option<usize>,
}

impl fmt::Debug for ExtensionMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtensionMonoid({} letters, {} rules)", self.letter_rep.len(), self.rules.rules.len())
    }
}

/// Longest irreducible word explored when deciding finiteness.
const FINITE_SEARCH_DEPTH: usize = 24;
const FINITE_SEARCH_ELEMENTS: usize = 4096;

impl ExtensionMonoid {
    pub fn letter_count(&self) -> usize {
        self.letter_rep.len()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.rules.len()
    }

    /// Whether completion finished within budget, so that normal forms are
    /// unique and equality is decidable.
    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    fn handle(&self, v: Value) -> MonElement {
        if self.trivial {
            return MonElement::Zero;
        }
        match v {
            Value::Zero => MonElement::Zero,
            Value::Word(w) if w.is_empty() => MonElement::One,
            Value::Word(w) => MonElement::Word(w),
        }
    }

    fn value(x: &MonElement) -> Value {
        match x {
            MonElement::Zero => Value::Zero,
            MonElement::Word(w) => Value::Word(w.clone()),
            _ => Value::Word(Vec::new()),
        }
    }

    fn pair_sym(&self, t: &MonElement, m: &MonElement) -> Sym {
        if self.trivial {
            return Sym::Zero;
        }
        if t.is_zero() || m.is_zero() {
            return Sym::Zero;
        }
        match self.pairs.node(t, m) {
            Some(n) => self.sym[n],
            None => Sym::Zero,
        }
    }

    /// `<t', m>`.
    pub fn pair(&self, t: &MonElement, m: &MonElement) -> MonElement {
        self.handle(Value::from_syms([self.pair_sym(t, m)]))
    }

    /// `<t1, m1> ... <tn, mn>`, normalized.
    pub fn product_of_pairs(&self, pairs: &[(MonElement, MonElement)]) -> MonElement {
        match Value::from_syms(pairs.iter().map(|(t, m)| self.pair_sym(t, m))) {
            Value::Zero => MonElement::Zero,
            Value::Word(w) => self.handle(self.rules.normalize(&w)),
        }
    }

    /// The letters of a normalized element, as representative pairs.
    pub fn letters_of(&self, x: &MonElement) -> Vec<(MonElement, MonElement)> {
        match x {
            MonElement::Word(w) => w
                .iter()
                .map(|&l| {
                    let (t, m) = self.pairs.pair(self.letter_rep[l as usize]);
                    (t.clone(), m.clone())
                })
                .collect(),
            _ => Vec::new(),
        }
    }

    /// `s . x`, letter by letter.
    pub fn act(&self, s: &MonElement, x: &MonElement) -> MonElement {
        if self.trivial || s.is_zero() || x.is_zero() {
            return MonElement::Zero;
        }
        let Some(si) = self.scalars.iter().position(|e| e == s) else {
            return MonElement::Zero;
        };
        match x {
            MonElement::Word(w) => match Value::from_syms(w.iter().map(|&l| self.act[si][l as usize])) {
                Value::Zero => MonElement::Zero,
                Value::Word(v) => self.handle(self.rules.normalize(&v)),
            },
            _ => MonElement::One,
        }
    }

    pub fn equality(&self, a: &MonElement, b: &MonElement) -> Equality {
        let (na, nb) = (self.rules.nf(&Self::value(a)), self.rules.nf(&Self::value(b)));
        if na == nb || self.trivial {
            Equality::Equal
        } else if self.saturated {
            Equality::Different
        } else {
            Equality::Undecided
        }
    }

    fn letter_label(&self, l: u32) -> String {
        let (t, m) = self.pairs.pair(self.letter_rep[l as usize]);
        format!("<{},{}>", self.tprime.label(t), self.carrier.label(m))
    }

    fn irreducible_words(&self, max_len: usize, max_count: usize) -> (Vec<Vec<u32>>, bool) {
        let n = self.letter_rep.len() as u32;
        let mut all = Vec::new();
        let mut level: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &level {
                for a in 0..n {
                    let mut v = w.clone();
                    v.push(a);
                    if self.rules.is_irreducible_extension(&v) {
                        next.push(v);
                    }
                }
            }
            if next.is_empty() {
                return (all, true);
            }
            all.extend(next.iter().cloned());
            if all.len() > max_count {
                return (all, false);
            }
            level = next;
        }
        (all, false)
    }
}

impl LazyMonoid for ExtensionMonoid {
    fn describe(&self) -> String {
        format!("l_!({} over {})", self.carrier.describe(), self.tprime.describe())
    }

    fn contains(&self, x: &MonElement) -> bool {
        match x {
            MonElement::Zero => true,
            MonElement::One => !self.trivial,
            MonElement::Word(w) => {
                !self.trivial
                    && !w.is_empty()
                    && w.iter().all(|&l| (l as usize) < self.letter_rep.len())
                    && self.rules.normalize(w) == Value::Word(w.clone())
            }
            MonElement::Tuple(_) => false,
        }
    }

    fn mul(&self, a: &MonElement, b: &MonElement) -> MonElement {
        match (a, b) {
            (MonElement::Zero, _) | (_, MonElement::Zero) => MonElement::Zero,
            _ if self.trivial => MonElement::Zero,
            (MonElement::One, x) | (x, MonElement::One) => x.clone(),
            (MonElement::Word(x), MonElement::Word(y)) => {
                self.handle(self.rules.normalize(&concat(&[x, y])))
            }
            _ => MonElement::Zero,
        }
    }

    fn size_of(&self, x: &MonElement) -> usize {
        match x {
            MonElement::Word(w) => w.len(),
            _ => 0,
        }
    }

    fn elements_up_to(&self, bound: usize) -> Vec<(MonElement, usize)> {
        let mut out = vec![(MonElement::Zero, 0)];
        if self.trivial {
            return out;
        }
        out.push((MonElement::One, 0));
        let (words, _) = self.irreducible_words(bound, usize::MAX);
        out.extend(words.into_iter().map(|w| {
            let n = w.len();
            (MonElement::Word(w), n)
        }));
        out
    }

    fn finite_bound(&self) -> Option<usize> {
        self.finite_bound
    }

    fn label(&self, x: &MonElement) -> String {
        match x {
            MonElement::Zero => "0".into(),
            MonElement::One => "1".into(),
            MonElement::Word(w) => w.iter().map(|&l| self.letter_label(l)).collect(),
            MonElement::Tuple(_) => format!("{x:?}"),
        }
    }

    fn parse(&self, s: &str) -> Option<MonElement> {
        let s = s.trim();
        match s {
            "0" => return Some(MonElement::Zero),
            "1" => return Some(self.one()),
            _ => {}
        }
        let mut pairs = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let body = rest.strip_prefix('<')?;
            let close = body.find('>')?;
            let inner = &body[..close];
            rest = body[close + 1..].trim_start();
            let pair = inner.match_indices(',').find_map(|(i, _)| {
                let t = self.tprime.parse(&inner[..i]).ok()?;
                let m = self.carrier.parse(&inner[i + 1..]).ok()?;
                Some((t, m))
            })?;
            pairs.push(pair);
        }
        Some(self.product_of_pairs(&pairs))
    }

    fn one(&self) -> MonElement {
        if self.trivial {
            MonElement::Zero
        } else {
            MonElement::One
        }
    }
}

/// `l_!` of a module with an absorption-monoid carrier, as a module over
/// `T'` together with its normal-form machinery.
#[derive(Clone, Debug)]
pub struct MonExtension {
    module: LeftModule,
    monoid: Arc<ExtensionMonoid>,
}

impl MonExtension {
    pub fn module(&self) -> &LeftModule {
        &self.module
    }

    pub fn monoid(&self) -> &ExtensionMonoid {
        &self.monoid
    }

    /// The carrier as an [`AbsMonoid`].
    pub fn carrier(&self) -> &AbsMonoid {
        self.module.carrier().as_monoid().expect("monoid carrier")
    }

    pub fn pair(&self, t: &MonElement, m: &MonElement) -> MonElement {
        self.monoid.pair(t, m)
    }

    /// `<1, m>`.
    pub fn unit(&self, m: &MonElement) -> MonElement {
        self.monoid.pair(&MonElement::One, m)
    }

    pub fn equality(&self, a: &MonElement, b: &MonElement) -> Equality {
        self.monoid.equality(a, b)
    }
}

struct Builder<'a> {
    tprime: &'a AbsMonoid,
    module: &'a LeftModule,
    carrier: &'a AbsMonoid,
    scalars: Vec<MonElement>,
    pairs: PairSpace,
}

impl Builder<'_> {
    const ZERO: usize = 0;
    const ONE: usize = 1;

    fn node(&self, t: &MonElement, m: &MonElement) -> usize {
        if t.is_zero() || m.is_zero() {
            Self::ZERO
        } else if m.is_one() || *m == self.carrier.one() {
            Self::ONE
        } else {
            2 + self.pairs.node(t, m).expect("pair of nonzero elements")
        }
    }

    /// `s . node`, before identifications.
    fn act_node(&self, s: &MonElement, n: usize) -> usize {
        match n {
            Self::ZERO => Self::ZERO,
            Self::ONE => {
                if s.is_zero() {
                    Self::ZERO
                } else {
                    Self::ONE
                }
            }
            _ => {
                let (t, m) = self.pairs.pair(n - 2);
                self.node(&self.tprime.mul(s, t), m)
            }
        }
    }
}

/// Extension of scalars for a module with an absorption-monoid carrier.
/// `budget` bounds the completion of the rewriting system; past it the
/// result is unsaturated and equality may be [`Equality::Undecided`].
pub fn extend_mon(l: &ScalarChange, module: &LeftModule, budget: usize) -> Result<MonExtension> {
    if module.scalars() != l.source() {
        return Err(Error::ScalarMismatch {
            expected: l.source().describe(),
            found: module.scalars().describe(),
        });
    }
    let carrier = module
        .carrier()
        .as_monoid()
        .ok_or_else(|| Error::TypeMismatch("extend_mon needs a monoid carrier".into()))?;
    let ts = l
        .source()
        .elements()
        .ok_or_else(|| Error::InfiniteInput(l.source().describe()))?;
    let tprime = l.target();
    let scalars = tprime
        .elements()
        .ok_or_else(|| Error::InfiniteInput(tprime.describe()))?;
    let pairs = PairSpace::new(tprime, module.carrier())?;
    let b = Builder {
        tprime,
        module,
        carrier,
        scalars,
        pairs,
    };
    let n_nodes = 2 + b.pairs.len();

    // Letter identifications: <t', t.m> = <t' l(t), m>, with <t', 1> = 1 and
    // zero components collapsing to 0.
    let mut uf = UnionFind::<usize>::new(n_nodes);
    for n in 0..b.pairs.len() {
        let (tp, m) = b.pairs.pair(n);
        uf.union(n + 2, b.node(tp, m));
        for t in &ts {
            let lhs = b.node(tp, &b.module.act_unchecked(t, m));
            let rhs = b.node(&tprime.mul(tp, &l.apply(t)), m);
            uf.union(lhs, rhs);
        }
    }
    // The action must respect the identifications. The node `1` stands for
    // every `<t', 1>`, so a zero divisor `s t' = 0` sends part of it to `0`.
    for s in b.scalars.iter().filter(|s| !s.is_zero()) {
        if b.pairs.tp.iter().any(|t| tprime.mul(s, t).is_zero()) {
            uf.union(Builder::ZERO, Builder::ONE);
        }
    }
    loop {
        let mut changed = false;
        let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for n in 0..n_nodes {
            by_root.entry(uf.find(n)).or_default().push(n);
        }
        for s in &b.scalars {
            for members in by_root.values() {
                let first = b.act_node(s, members[0]);
                for &n in &members[1..] {
                    changed |= uf.union(first, b.act_node(s, n));
                }
            }
        }
        if !changed {
            break;
        }
    }
    let trivial = uf.equiv(Builder::ZERO, Builder::ONE);

    let (zero_root, one_root) = (uf.find(Builder::ZERO), uf.find(Builder::ONE));
    let mut letter_of_root: BTreeMap<usize, u32> = BTreeMap::new();
    let mut letter_rep = Vec::new();
    let mut sym = Vec::with_capacity(b.pairs.len());
    for n in 0..b.pairs.len() {
        let r = uf.find(n + 2);
        let s = if r == zero_root {
            Sym::Zero
        } else if r == one_root {
            Sym::One
        } else {
            let next = letter_rep.len() as u32;
            let l = *letter_of_root.entry(r).or_insert(next);
            if l == next {
                letter_rep.push(n);
            }
            Sym::Letter(l)
        };
        sym.push(s);
    }
    let sym_of = |t: &MonElement, m: &MonElement| -> Sym {
        match b.node(t, m) {
            Builder::ZERO => Sym::Zero,
            Builder::ONE => Sym::One,
            n => sym[n - 2],
        }
    };
    let act: Vec<Vec<Sym>> = b
        .scalars
        .iter()
        .map(|s| {
            letter_rep
                .iter()
                .map(|&n| {
                    let (t, m) = b.pairs.pair(n);
                    sym_of(&tprime.mul(s, t), m)
                })
                .collect()
        })
        .collect();

    let mut monoid = ExtensionMonoid {
        tprime: tprime.clone(),
        carrier: carrier.clone(),
        scalars: b.scalars.clone(),
        pairs: b.pairs.clone(),
        sym: sym.clone(),
        letter_rep,
        act,
        rules: Rules::default(),
        saturated: true,
        trivial,
        finite_bound: Some(0),
    };
    if !trivial {
        // <t', m1> <t', m2> = <t', m1 m2>
        let mut equations = Vec::new();
        for t in &b.pairs.tp {
            for m1 in &b.pairs.ms {
                for m2 in &b.pairs.ms {
                    let lhs = Value::from_syms([sym_of(t, m1), sym_of(t, m2)]);
                    let rhs = Value::from_syms([sym_of(t, &carrier.mul(m1, m2))]);
                    equations.push((lhs, rhs));
                }
            }
        }
        let nonzero_rows: Vec<Vec<Sym>> = b
            .scalars
            .iter()
            .zip(&monoid.act)
            .filter(|(s, _)| !s.is_zero())
            .map(|(_, row)| row.clone())
            .collect();
        let outcome = complete(equations, &nonzero_rows, budget);
        monoid.rules = outcome.rules;
        monoid.saturated = outcome.saturated;
        monoid.trivial = outcome.collapsed;
        monoid.finite_bound = if monoid.trivial {
            Some(0)
        } else if monoid.saturated {
            let (_, finite) = monoid.irreducible_words(FINITE_SEARCH_DEPTH, FINITE_SEARCH_ELEMENTS);
            if finite {
                Some(monoid.irreducible_words(FINITE_SEARCH_DEPTH, usize::MAX).0.iter().map(Vec::len).max().unwrap_or(0))
            } else {
                None
            }
        } else {
            None
        };
    }

    let monoid = Arc::new(monoid);
    let abs = AbsMonoid::lazy(monoid.clone());
    let acting = monoid.clone();
    let ext = LeftModule::new(tprime.clone(), Carrier::Mon(abs), move |s, x| acting.act(s, x))
        .named(format!("extension of {}", module.name()));
    Ok(MonExtension { module: ext, monoid })
}

struct Completion {
    rules: Rules,
    /// Finished within budget.
    saturated: bool,
    /// Derived `1 = 0`.
    collapsed: bool,
}

/// Knuth-Bendix completion under shortlex, closed under the letterwise
/// action of every nonzero scalar, stopping after `budget` processed
/// equations.
fn complete(equations: Vec<(Value, Value)>, act: &[Vec<Sym>], budget: usize) -> Completion {
    let mut rules = Rules::default();
    let mut pending: VecDeque<(Value, Value)> = equations.into();
    let mut steps = 0usize;
    let act_value = |s: &[Sym], v: &Value| -> Value {
        match v {
            Value::Zero => Value::Zero,
            Value::Word(w) => Value::from_syms(w.iter().map(|&l| s[l as usize])),
        }
    };
    while let Some((a, b)) = pending.pop_front() {
        steps += 1;
        if steps > budget {
            return Completion {
                rules,
                saturated: false,
                collapsed: false,
            };
        }
        let (na, nb) = (rules.nf(&a), rules.nf(&b));
        if na == nb {
            continue;
        }
        let (big, small) = if shortlex_greater(&na, &nb) { (na, nb) } else { (nb, na) };
        let Value::Word(lhs) = big else { unreachable!("zero is least") };
        if lhs.is_empty() {
            return Completion {
                rules: Rules::default(),
                saturated: true,
                collapsed: true,
            };
        }

        // Rules whose left side contains the new one become equations again;
        // right sides are reduced lazily by the next normalization.
        let mut kept = Vec::with_capacity(rules.rules.len());
        for (l, r) in rules.rules.drain(..) {
            if l.windows(lhs.len()).any(|w| w == lhs.as_slice()) {
                pending.push_back((Value::Word(l), r));
            } else {
                kept.push((l, r));
            }
        }
        rules.rules = kept;

        let mut new_eqs = Vec::new();
        for (l, r) in &rules.rules {
            critical_pairs(&lhs, &small, l, r, &mut new_eqs);
            critical_pairs(l, r, &lhs, &small, &mut new_eqs);
        }
        critical_pairs(&lhs, &small, &lhs, &small, &mut new_eqs);
        for s in act {
            new_eqs.push((act_value(s, &Value::Word(lhs.clone())), act_value(s, &small)));
        }
        rules.rules.push((lhs, small));
        pending.extend(new_eqs);
    }
    // Right sides may still be reducible after late rules; normalize them so
    // the final system is reduced.
    let snapshot = rules.clone();
    for (_, r) in rules.rules.iter_mut() {
        *r = snapshot.nf(r);
    }
    rules.rules.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Completion {
        rules,
        saturated: true,
        collapsed: false,
    }
}

/// `l_!(f)`: `<t', m> -> <t', f(m)>`, extended multiplicatively.
pub fn extend_mon_map(f: &ModuleMorphism, src: &MonExtension, tgt: &MonExtension) -> Result<ModuleMorphism> {
    let (s, t) = (src.monoid.clone(), tgt.monoid.clone());
    let f = f.clone();
    ModuleMorphism::new(
        src.module.clone(),
        tgt.module.clone(),
        move |x| match x {
            MonElement::Zero => MonElement::Zero,
            MonElement::One => t.one(),
            _ => {
                let pairs: Vec<_> = s.letters_of(x).into_iter().map(|(tp, m)| (tp, f.apply(&m))).collect();
                t.product_of_pairs(&pairs)
            }
        },
        MonoidMorphism::identity(src.module.scalars()),
    )
}

/// Letters of `l_!` grouped as sets of pairs, for inspection.
pub(crate) fn letter_members(ext: &MonExtension) -> Vec<BTreeSet<(MonElement, MonElement)>> {
    let m = &ext.monoid;
    let mut out = vec![BTreeSet::new(); m.letter_rep.len()];
    for (n, s) in m.sym.iter().enumerate() {
        if let Sym::Letter(l) = s {
            let (t, x) = m.pairs.pair(n);
            out[*l as usize].insert((t.clone(), x.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::absorption_monoid::FiniteAbsMonoid;
    use crate::pointed_modules::find_module_isomorphism;
    use crate::DEFAULT_BUDGET;

    fn z(n: usize) -> AbsMonoid {
        AbsMonoid::from_table(FiniteAbsMonoid::cyclic_group_with_zero(n)).unwrap()
    }

    fn unit_inclusion(tp: &AbsMonoid) -> ScalarChange {
        let inc = MonoidMorphism::from_table(
            AbsMonoid::two_element(),
            tp.clone(),
            BTreeMap::from([(MonElement::Zero, MonElement::Zero), (MonElement::One, MonElement::One)]),
        )
        .unwrap();
        ScalarChange::new(inc, 4).unwrap()
    }

    #[test]
    fn images_of_zero_and_one() {
        let t = z(2);
        let m = LeftModule::trivial_action(&t, Carrier::Mon(z(3)));
        let ext = extend_mon(&ScalarChange::identity(&t), &m, DEFAULT_BUDGET).unwrap();
        assert_eq!(ext.unit(&MonElement::One), MonElement::One);
        assert_eq!(ext.unit(&MonElement::Zero), MonElement::Zero);
        assert_eq!(ext.pair(&MonElement::Zero, &MonElement::letter(2)), MonElement::Zero);
    }

    #[test]
    fn same_scalar_letters_merge() {
        let t = z(2);
        let m = LeftModule::trivial_action(&t, Carrier::Mon(z(3)));
        let ext = extend_mon(&ScalarChange::identity(&t), &m, DEFAULT_BUDGET).unwrap();
        let g = MonElement::letter(2);
        let g2 = MonElement::letter(3);
        let lhs = ext.monoid().product_of_pairs(&[(MonElement::One, g.clone()), (MonElement::One, g.clone())]);
        assert_eq!(lhs, ext.unit(&g2));
    }

    #[test]
    fn identity_extension_of_unital_module() {
        // Z/3 with zero, trivially acted on by Z/2 with zero: l = id gives
        // back the module.
        let t = z(2);
        let m = LeftModule::trivial_action(&t, Carrier::Mon(z(3)));
        let ext = extend_mon(&ScalarChange::identity(&t), &m, DEFAULT_BUDGET).unwrap();
        assert!(ext.monoid().is_saturated());
        assert!(ext.module().check_module_axioms(4).is_ok());
        assert!(find_module_isomorphism(ext.module(), &m).is_some());
    }

    #[test]
    fn two_element_regular_extends_to_itself() {
        let t = AbsMonoid::two_element();
        let m = LeftModule::trivial_action(&t, Carrier::Mon(t.clone()));
        let ext = extend_mon(&ScalarChange::identity(&t), &m, DEFAULT_BUDGET).unwrap();
        assert_eq!(ext.carrier().elements().unwrap().len(), 2);
    }

    #[test]
    fn extension_along_unit_inclusion_is_a_free_product() {
        // Copies of Z/3 indexed by the nonzero elements of Z/2: infinite.
        let tp = z(2);
        let s = AbsMonoid::two_element();
        let m = LeftModule::trivial_action(&s, Carrier::Mon(z(3)));
        let ext = extend_mon(&unit_inclusion(&tp), &m, DEFAULT_BUDGET).unwrap();
        assert!(ext.monoid().is_saturated());
        assert_eq!(ext.monoid().letter_count(), 4);
        assert_eq!(ext.carrier().finite_bound(), None);
        assert!(ext.module().check_module_axioms(3).is_ok());
    }

    #[test]
    fn zero_divisors_collapse_the_extension() {
        // T' = {0, 1, a} with a*a = 0: a . <1, 1> = <a, 1> = 1 but also
        // a . 1 = a . <a, 1> = <0, 1> = 0.
        let tp = AbsMonoid::from_table(FiniteAbsMonoid::truncated_free(&["a"], 1)).unwrap();
        let s = AbsMonoid::two_element();
        let m = LeftModule::trivial_action(&s, Carrier::Mon(z(2)));
        let ext = extend_mon(&unit_inclusion(&tp), &m, DEFAULT_BUDGET).unwrap();
        assert!(ext.monoid().is_trivial());
        assert_eq!(ext.carrier().elements().unwrap(), vec![MonElement::Zero]);
    }

    #[test]
    fn labels_round_trip() {
        let t = z(2);
        let m = LeftModule::trivial_action(&AbsMonoid::two_element(), Carrier::Mon(z(3)));
        let ext = extend_mon(&unit_inclusion(&t), &m, DEFAULT_BUDGET).unwrap();
        for (x, _) in ext.carrier().elements_up_to(3) {
            let lab = ext.carrier().label(&x);
            assert_eq!(ext.carrier().parse(&lab).unwrap(), x, "{lab}");
        }
    }
}
