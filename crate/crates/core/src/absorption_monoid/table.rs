use serde::{Deserialize, Serialize};

use super::{AxiomReport, Law};

/// An absorption monoid given by its full multiplication table.
///
/// The table is stored as given; nothing is validated on construction so that
/// [`FiniteAbsMonoid::check_axioms`] can report every defect of a malformed
/// input instead of refusing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbsMonoid {
    names: Vec<String>,
    zero: usize,
    one: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteAbsMonoid {
    pub fn new(names: Vec<String>, zero: usize, one: usize, table: Vec<Vec<usize>>) -> Self {
        FiniteAbsMonoid {
            names,
            zero,
            one,
            table,
        }
    }

    pub fn from_fn(
        names: Vec<String>,
        zero: usize,
        one: usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = names.len();
        let table = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        FiniteAbsMonoid::new(names, zero, one, table)
    }

    /// Table with names `0`, `1`, `e2`, `e3`, ... and zero at 0, one at 1.
    pub fn with_default_names(table: Vec<Vec<usize>>) -> Self {
        let names = default_names(table.len());
        let one = if table.len() > 1 { 1 } else { 0 };
        FiniteAbsMonoid::new(names, 0, one, table)
    }

    /// The one-element monoid where `0 = 1`.
    pub fn trivial() -> Self {
        FiniteAbsMonoid::new(vec!["0".into()], 0, 0, vec![vec![0]])
    }

    /// The minimal absorption monoid `{0, 1}`.
    pub fn two_element() -> Self {
        FiniteAbsMonoid::from_fn(vec!["0".into(), "1".into()], 0, 1, |a, b| a * b)
    }

    /// `{0}` adjoined to the cyclic group of order `n`. Index `i >= 1` is
    /// `g^(i-1)`.
    pub fn cyclic_group_with_zero(n: usize) -> Self {
        assert!(n >= 1);
        let mut names = vec!["0".to_string(), "1".to_string()];
        for k in 1..n {
            names.push(if k == 1 { "g".into() } else { format!("g{k}") });
        }
        FiniteAbsMonoid::from_fn(names, 0, 1, |a, b| {
            if a == 0 || b == 0 {
                0
            } else {
                1 + ((a - 1) + (b - 1)) % n
            }
        })
    }

    /// Words of length at most `max_len` over `letters`, products that grow
    /// longer than `max_len` overflow to 0.
    pub fn truncated_free(letters: &[&str], max_len: usize) -> Self {
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut frontier = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for l in 0..letters.len() {
                    let mut w2: Vec<usize> = w.clone();
                    w2.push(l);
                    next.push(w2);
                }
            }
            words.extend(next.iter().cloned());
            frontier = next;
        }
        let mut names = vec!["0".to_string(), "1".to_string()];
        names.extend(
            words[1..]
                .iter()
                .map(|w| w.iter().map(|&l| letters[l]).collect::<String>()),
        );
        let index = |w: &[usize]| words.iter().position(|x| x.as_slice() == w).map(|p| p + 1);
        FiniteAbsMonoid::from_fn(names, 0, 1, |a, b| {
            if a == 0 || b == 0 {
                return 0;
            }
            let mut w = words[a - 1].clone();
            w.extend_from_slice(&words[b - 1]);
            index(&w).unwrap_or(0)
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Product of two indices. Callers must hold a well-formed table.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn is_well_formed(&self) -> bool {
        let n = self.names.len();
        n > 0
            && self.zero < n
            && self.one < n
            && self.table.len() == n
            && self.table.iter().all(|row| row.len() == n && row.iter().all(|&x| x < n))
    }

    fn malformed(&self, report: &mut AxiomReport) {
        let n = self.names.len();
        if n == 0 {
            report.violation(Law::Malformed, vec![], "empty carrier");
            return;
        }
        if self.zero >= n {
            report.violation(Law::Malformed, vec![], format!("zero index {} out of range", self.zero));
        }
        if self.one >= n {
            report.violation(Law::Malformed, vec![], format!("one index {} out of range", self.one));
        }
        if self.table.len() != n {
            report.violation(
                Law::Malformed,
                vec![],
                format!("table has {} rows, expected {n}", self.table.len()),
            );
        }
        for (a, row) in self.table.iter().enumerate() {
            let row_name = self.names.get(a).cloned().unwrap_or_else(|| format!("#{a}"));
            if row.len() != n {
                report.violation(
                    Law::Malformed,
                    vec![row_name.clone()],
                    format!("row has {} entries, expected {n}", row.len()),
                );
            }
            for (b, &x) in row.iter().enumerate() {
                if x >= n {
                    let col = self.names.get(b).cloned().unwrap_or_else(|| format!("#{b}"));
                    report.violation(
                        Law::Malformed,
                        vec![row_name.clone(), col],
                        format!("entry {x} out of range"),
                    );
                }
            }
        }
    }

    /// Exhaustively check the five absorption-monoid laws. The report is
    /// empty iff the table is an absorption monoid.
    pub fn check_axioms(&self) -> AxiomReport {
        let mut report = AxiomReport::new(format!("table monoid of size {}", self.len()), None);
        if !self.is_well_formed() {
            self.malformed(&mut report);
            return report.finish();
        }
        let n = self.len();
        let nm = |i: usize| self.names[i].clone();
        let (z, o) = (self.zero, self.one);
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    let lhs = self.mul(a, self.mul(b, c));
                    let rhs = self.mul(ab, c);
                    if lhs != rhs {
                        report.violation(
                            Law::Associativity,
                            vec![nm(a), nm(b), nm(c)],
                            format!("{} != {}", nm(lhs), nm(rhs)),
                        );
                    }
                }
            }
        }
        for m in 0..n {
            let checks = [
                (Law::RightUnit, (m, o), m),
                (Law::LeftUnit, (o, m), m),
                (Law::RightAbsorption, (m, z), z),
                (Law::LeftAbsorption, (z, m), z),
            ];
            for (law, (a, b), want) in checks {
                let got = self.mul(a, b);
                if got != want {
                    report.violation(law, vec![nm(a), nm(b)], format!("got {}, expected {}", nm(got), nm(want)));
                }
            }
        }
        report.checked = (n * n * n + 4 * n) as u64;
        report.finish()
    }

    /// Two-sided inverse of `a` in `M \ {0}`, if any.
    pub fn inverse(&self, a: usize) -> Option<usize> {
        if a == self.zero {
            return None;
        }
        (0..self.len()).find(|&b| {
            b != self.zero && self.mul(a, b) == self.one && self.mul(b, a) == self.one
        })
    }

    /// True iff `M \ {0}` is a group under the table multiplication.
    pub fn is_absorption_group(&self) -> bool {
        if !self.is_well_formed() || self.zero == self.one {
            return false;
        }
        let nonzero: Vec<usize> = (0..self.len()).filter(|&a| a != self.zero).collect();
        let closed = nonzero
            .iter()
            .all(|&a| nonzero.iter().all(|&b| self.mul(a, b) != self.zero));
        closed && nonzero.iter().all(|&a| self.inverse(a).is_some())
    }

    pub fn is_abelian_absorption_group(&self) -> bool {
        self.is_absorption_group()
            && (0..self.len()).all(|a| (0..self.len()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Bijection `phi` from `self` onto `other` with `phi(a*b) = phi(a)*phi(b)`
    /// that matches zeros and ones, found by backtracking.
    pub fn find_isomorphism(&self, other: &FiniteAbsMonoid) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || !self.is_well_formed() || !other.is_well_formed() {
            return None;
        }
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        phi[self.zero] = other.zero;
        used[other.zero] = true;
        if self.one != self.zero {
            if other.one == other.zero {
                return None;
            }
            phi[self.one] = other.one;
            used[other.one] = true;
        } else if other.one != other.zero {
            return None;
        }
        let order: Vec<usize> = (0..n).filter(|&a| phi[a] == usize::MAX).collect();
        fn consistent(s: &FiniteAbsMonoid, o: &FiniteAbsMonoid, phi: &[usize]) -> bool {
            let n = s.len();
            for a in 0..n {
                for b in 0..n {
                    let (pa, pb, pab) = (phi[a], phi[b], phi[s.mul(a, b)]);
                    if pa != usize::MAX && pb != usize::MAX && pab != usize::MAX && o.mul(pa, pb) != pab {
                        return false;
                    }
                }
            }
            true
        }
        fn go(
            s: &FiniteAbsMonoid,
            o: &FiniteAbsMonoid,
            order: &[usize],
            k: usize,
            phi: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let a = order[k];
            for cand in 0..o.len() {
                if used[cand] {
                    continue;
                }
                phi[a] = cand;
                used[cand] = true;
                if consistent(s, o, phi) && go(s, o, order, k + 1, phi, used) {
                    return true;
                }
                used[cand] = false;
            }
            phi[a] = usize::MAX;
            false
        }
        if !consistent(self, other, &phi) {
            return None;
        }
        go(self, other, &order, 0, &mut phi, &mut used).then_some(phi)
    }

    pub fn is_isomorphic(&self, other: &FiniteAbsMonoid) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            1 => "1".to_string(),
            _ => format!("e{i}"),
        })
        .collect()
}

/// Every absorption monoid on `{0, 1, e2, .., e(n-1)}` with zero at index 0
/// and one at index 1 (labelled, not up to isomorphism). `n = 1` yields the
/// trivial monoid.
pub fn all_table_monoids(n: usize) -> Vec<FiniteAbsMonoid> {
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![FiniteAbsMonoid::trivial()];
    }
    let free: Vec<(usize, usize)> = (2..n).flat_map(|a| (2..n).map(move |b| (a, b))).collect();
    let mut table = vec![vec![0; n]; n];
    for x in 0..n {
        table[1][x] = x;
        table[x][1] = x;
    }
    let mut out = Vec::new();
    // Backtrack over the free entries, pruning with every associativity triple
    // whose products are already assigned.
    fn assoc_ok(table: &[Vec<usize>], assigned: &[Vec<bool>], n: usize) -> bool {
        for a in 0..n {
            for b in 0..n {
                if !assigned[a][b] {
                    continue;
                }
                let ab = table[a][b];
                for c in 0..n {
                    if !assigned[b][c] || !assigned[ab][c] {
                        continue;
                    }
                    let bc = table[b][c];
                    if !assigned[a][bc] {
                        continue;
                    }
                    if table[a][bc] != table[ab][c] {
                        return false;
                    }
                }
            }
        }
        true
    }
    fn go(
        k: usize,
        free: &[(usize, usize)],
        table: &mut Vec<Vec<usize>>,
        assigned: &mut Vec<Vec<bool>>,
        n: usize,
        out: &mut Vec<FiniteAbsMonoid>,
    ) {
        if k == free.len() {
            out.push(FiniteAbsMonoid::with_default_names(table.clone()));
            return;
        }
        let (a, b) = free[k];
        assigned[a][b] = true;
        for v in 0..n {
            table[a][b] = v;
            if assoc_ok(table, assigned, n) {
                go(k + 1, free, table, assigned, n, out);
            }
        }
        assigned[a][b] = false;
    }
    let mut assigned = vec![vec![false; n]; n];
    for x in 0..n {
        assigned[0][x] = true;
        assigned[x][0] = true;
        assigned[1][x] = true;
        assigned[x][1] = true;
    }
    go(0, &free, &mut table, &mut assigned, n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_element_is_absorption_monoid() {
        assert!(FiniteAbsMonoid::two_element().check_axioms().is_ok());
    }

    #[test]
    fn three_element_involution_passes_all_triples() {
        // a*a = 1
        let m = FiniteAbsMonoid::with_default_names(vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 1]]);
        let r = m.check_axioms();
        assert!(r.is_ok(), "{r}");
        assert_eq!(r.checked, 27 + 12);
    }

    #[test]
    fn left_absorption_violation_is_reported() {
        let mut t = FiniteAbsMonoid::two_element().table().to_vec();
        t[0][1] = 1;
        let r = FiniteAbsMonoid::with_default_names(t).check_axioms();
        assert!(r.violates(Law::LeftAbsorption));
        let v = r.violations.iter().find(|v| v.law == Law::LeftAbsorption).unwrap();
        assert_eq!(v.witnesses, vec!["0".to_string(), "1".to_string()]);
    }

    #[test]
    fn malformed_tables_yield_violations() {
        let m = FiniteAbsMonoid::new(vec!["0".into(), "1".into()], 0, 1, vec![vec![0, 0], vec![0, 7]]);
        let r = m.check_axioms();
        assert!(r.violates(Law::Malformed));
        let m = FiniteAbsMonoid::new(vec!["0".into(), "1".into()], 0, 1, vec![vec![0, 0]]);
        assert!(m.check_axioms().violates(Law::Malformed));
    }

    #[test]
    fn groups() {
        assert!(FiniteAbsMonoid::two_element().is_absorption_group());
        let z2 = FiniteAbsMonoid::cyclic_group_with_zero(2);
        assert!(z2.is_absorption_group());
        assert!(z2.is_abelian_absorption_group());
        assert!(!FiniteAbsMonoid::trivial().is_absorption_group());
        let trunc = FiniteAbsMonoid::truncated_free(&["a"], 2);
        assert_eq!(trunc.len(), 4);
        assert!(trunc.check_axioms().is_ok());
        assert!(!trunc.is_absorption_group());
    }

    #[test]
    fn monoid_counts_by_size() {
        // {0,1,a}: a*a in {0, 1, a}
        assert_eq!(all_table_monoids(3).len(), 3);
        assert!(all_table_monoids(4).iter().all(|m| m.check_axioms().is_ok()));
    }

    #[test]
    fn isomorphism_detects_relabelling() {
        let z3 = FiniteAbsMonoid::cyclic_group_with_zero(3);
        let mut relabelled = z3.clone();
        // swap g and g2
        let perm = [0usize, 1, 3, 2];
        relabelled.table = (0..4)
            .map(|a| (0..4).map(|b| perm[z3.mul(perm[a], perm[b])]).collect())
            .collect();
        assert!(z3.is_isomorphic(&relabelled));
        assert!(!z3.is_isomorphic(&FiniteAbsMonoid::truncated_free(&["a"], 2)));
    }
}
