use std::collections::{BTreeMap, HashMap, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::space::{GridSpace, STEP_R, STEP_U};

/// One dihomotopy class of d-paths between two grid vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DihomotopyClass {
    pub from: (u32, u32),
    pub to: (u32, u32),
    /// Lexicographically least member (`R < U`).
    pub representative: Vec<u32>,
    /// All members, in lexicographic order.
    pub members: Vec<Vec<u32>>,
}

/// Every monotone step word from `a` to `b`, in lexicographic order. Empty
/// when `b` is not above and to the right of `a`, or outside the grid.
pub fn enumerate_dipaths(grid: &GridSpace, a: (u32, u32), b: (u32, u32)) -> Vec<Vec<u32>> {
    if a.0 > b.0 || a.1 > b.1 || !grid.contains_vertex(a.0, a.1) || !grid.contains_vertex(b.0, b.1) {
        return vec![];
    }
    let (dx, dy) = ((b.0 - a.0) as usize, (b.1 - a.1) as usize);
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(dx + dy);
    fn go(r: usize, u: usize, word: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if r == 0 && u == 0 {
            out.push(word.clone());
            return;
        }
        if r > 0 {
            word.push(STEP_R);
            go(r - 1, u, word, out);
            word.pop();
        }
        if u > 0 {
            word.push(STEP_U);
            go(r, u - 1, word, out);
            word.pop();
        }
    }
    go(dx, dy, &mut word, &mut out);
    out
}

/// Whether exchanging steps `i` and `i + 1` (one `R`, one `U`) of a path
/// starting at `a` is an elementary dihomotopy: the swept cell, whose
/// lower-left corner is the vertex reached after `i` steps, must not be
/// forbidden.
pub fn swap_allowed(grid: &GridSpace, a: (u32, u32), steps: &[u32], i: usize) -> bool {
    if i + 1 >= steps.len() || steps[i] == steps[i + 1] {
        return false;
    }
    let rights = steps[..i].iter().filter(|&&s| s == STEP_R).count() as u32;
    let (x, y) = (a.0 + rights, a.1 + i as u32 - rights);
    !grid.is_forbidden(x, y)
}

fn swapped(steps: &[u32], i: usize) -> Vec<u32> {
    let mut w = steps.to_vec();
    w.swap(i, i + 1);
    w
}

fn collect(a: (u32, u32), b: (u32, u32), paths: &[Vec<u32>], labels: &[usize]) -> Vec<DihomotopyClass> {
    let mut groups: BTreeMap<usize, Vec<Vec<u32>>> = BTreeMap::new();
    for (p, &l) in paths.iter().zip(labels) {
        groups.entry(l).or_default().push(p.clone());
    }
    let mut classes: Vec<DihomotopyClass> = groups
        .into_values()
        .map(|mut members| {
            members.sort();
            DihomotopyClass {
                from: a,
                to: b,
                representative: members[0].clone(),
                members,
            }
        })
        .collect();
    classes.sort();
    classes
}

/// Partition the d-paths from `a` to `b` into dihomotopy classes: union-find
/// over all paths, merging every pair related by one allowed square swap.
pub fn dihomotopy_classes(grid: &GridSpace, a: (u32, u32), b: (u32, u32)) -> Vec<DihomotopyClass> {
    let paths = enumerate_dipaths(grid, a, b);
    let index: HashMap<&[u32], usize> = paths.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut uf = UnionFind::<usize>::new(paths.len());
    for (i, p) in paths.iter().enumerate() {
        for k in 0..p.len().saturating_sub(1) {
            if swap_allowed(grid, a, p, k) {
                uf.union(i, index[swapped(p, k).as_slice()]);
            }
        }
    }
    collect(a, b, &paths, &uf.into_labeling())
}

/// Same partition computed differently: breadth-first flood fill from each
/// unvisited path, taking paths in reverse lexicographic order and trying
/// swap positions from the end of the word. Used to confirm that the
/// partition does not depend on enumeration or move order.
pub fn dihomotopy_classes_flood(grid: &GridSpace, a: (u32, u32), b: (u32, u32)) -> Vec<DihomotopyClass> {
    let paths = enumerate_dipaths(grid, a, b);
    let mut label: HashMap<Vec<u32>, usize> = HashMap::new();
    for (c, start) in paths.iter().rev().enumerate() {
        if label.contains_key(start) {
            continue;
        }
        label.insert(start.clone(), c);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(p) = queue.pop_front() {
            for k in (0..p.len().saturating_sub(1)).rev() {
                if swap_allowed(grid, a, &p, k) {
                    let q = swapped(&p, k);
                    if !label.contains_key(&q) {
                        label.insert(q.clone(), c);
                        queue.push_back(q);
                    }
                }
            }
        }
    }
    let labels: Vec<usize> = paths.iter().map(|p| label[p]).collect();
    collect(a, b, &paths, &labels)
}
