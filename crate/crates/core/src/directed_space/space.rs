use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::toposort;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const STEP_R: u32 = 0;
pub const STEP_U: u32 = 1;

/// The `W x H` grid `[0,W] x [0,H]` with some unit cells removed. Cell `(i, j)`
/// is the open square with lower-left corner `(i, j)`.
///
/// Forbidden cells are open: d-paths run along grid edges, so every monotone
/// lattice path is a d-path, and a forbidden cell only blocks the square swap
/// across it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpace {
    pub width: u32,
    pub height: u32,
    pub forbidden: BTreeSet<(u32, u32)>,
}

impl GridSpace {
    pub fn new(width: u32, height: u32) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                bound: "a positive grid size".into(),
            });
        }
        Ok(GridSpace {
            width,
            height,
            forbidden: BTreeSet::new(),
        })
    }

    pub fn forbid_cell(&mut self, x: u32, y: u32) -> Result<()> {
        if x >= self.width || y >= self.height {
            return Err(Error::IndexOutOfRange {
                index: x.max(y) as usize,
                bound: format!("a cell inside {}x{}", self.width, self.height),
            });
        }
        self.forbidden.insert((x, y));
        Ok(())
    }

    /// Forbid cells `i in [x0, x1)`, `j in [y0, y1)`.
    pub fn forbid_rect(&mut self, x0: u32, y0: u32, x1: u32, y1: u32) -> Result<()> {
        if x0 >= x1 || y0 >= y1 || x1 > self.width || y1 > self.height {
            return Err(Error::IndexOutOfRange {
                index: x1.max(y1) as usize,
                bound: format!("a nonempty rectangle inside {}x{}", self.width, self.height),
            });
        }
        for x in x0..x1 {
            for y in y0..y1 {
                self.forbidden.insert((x, y));
            }
        }
        Ok(())
    }

    pub fn with_forbidden(mut self, cells: &[(u32, u32)]) -> Result<Self> {
        for &(x, y) in cells {
            self.forbid_cell(x, y)?;
        }
        Ok(self)
    }

    pub fn is_forbidden(&self, x: u32, y: u32) -> bool {
        self.forbidden.contains(&(x, y))
    }

    pub fn vertex_count(&self) -> usize {
        ((self.width + 1) * (self.height + 1)) as usize
    }

    pub fn vertex(&self, x: u32, y: u32) -> u32 {
        y * (self.width + 1) + x
    }

    pub fn coords(&self, v: u32) -> (u32, u32) {
        (v % (self.width + 1), v / (self.width + 1))
    }

    pub fn contains_vertex(&self, x: u32, y: u32) -> bool {
        x <= self.width && y <= self.height
    }

    pub fn step_end(&self, v: u32, steps: &[u32]) -> Option<u32> {
        let (mut x, mut y) = self.coords(v);
        for &s in steps {
            match s {
                STEP_R => x += 1,
                STEP_U => y += 1,
                _ => return None,
            }
            if !self.contains_vertex(x, y) {
                return None;
            }
        }
        Some(self.vertex(x, y))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub label: String,
    pub src: u32,
    pub dst: u32,
}

/// Finite directed graph; d-paths are composable edge sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirectedGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

impl DirectedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> Result<u32> {
        let name = name.into();
        if self.vertices.contains(&name) {
            return Err(Error::TypeMismatch(format!("duplicate vertex {name}")));
        }
        self.vertices.push(name);
        Ok(self.vertices.len() as u32 - 1)
    }

    pub fn vertex_index(&self, name: &str) -> Option<u32> {
        self.vertices.iter().position(|v| v == name).map(|i| i as u32)
    }

    pub fn add_edge(&mut self, label: impl Into<String>, src: &str, dst: &str) -> Result<u32> {
        let label = label.into();
        if self.edges.iter().any(|e| e.label == label) {
            return Err(Error::TypeMismatch(format!("duplicate edge label {label}")));
        }
        let find = |n: &str| {
            self.vertex_index(n)
                .ok_or_else(|| Error::TypeMismatch(format!("unknown vertex {n}")))
        };
        let (s, d) = (find(src)?, find(dst)?);
        self.edges.push(Edge { label, src: s, dst: d });
        Ok(self.edges.len() as u32 - 1)
    }

    pub fn edge_index(&self, label: &str) -> Option<u32> {
        self.edges.iter().position(|e| e.label == label).map(|i| i as u32)
    }

    pub fn path_end(&self, v: u32, edges: &[u32]) -> Option<u32> {
        if v as usize >= self.vertices.len() {
            return None;
        }
        edges.iter().try_fold(v, |at, &e| {
            let e = self.edges.get(e as usize)?;
            (e.src == at).then_some(e.dst)
        })
    }

    /// Length of the longest path, or `None` if the graph has a cycle.
    pub fn longest_path(&self) -> Option<usize> {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = self.vertices.iter().map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(nodes[e.src as usize], nodes[e.dst as usize], ());
        }
        let order = toposort(&g, None).ok()?;
        let mut longest: BTreeMap<usize, usize> = BTreeMap::new();
        let mut best = 0;
        for n in order {
            let here = longest.get(&n.index()).copied().unwrap_or(0);
            best = best.max(here);
            for e in self.edges.iter().filter(|e| e.src as usize == n.index()) {
                let d = longest.entry(e.dst as usize).or_insert(0);
                *d = (*d).max(here + 1);
            }
        }
        Some(best)
    }
}

/// A combinatorial directed space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    Grid(GridSpace),
    Graph(DirectedGraph),
}

impl Space {
    pub fn describe(&self) -> String {
        match self {
            Space::Grid(g) => {
                if g.forbidden.is_empty() {
                    format!("{}x{} grid", g.width, g.height)
                } else {
                    format!("{}x{} grid with {} forbidden cells", g.width, g.height, g.forbidden.len())
                }
            }
            Space::Graph(g) => format!("graph with {} vertices and {} edges", g.vertices.len(), g.edges.len()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Space::Grid(g) => g.vertex_count(),
            Space::Graph(g) => g.vertices.len(),
        }
    }

    pub fn path_valid(&self, start: u32, steps: &[u32]) -> bool {
        (start as usize) < self.vertex_count() && self.try_end(start, steps).is_some()
    }

    fn try_end(&self, start: u32, steps: &[u32]) -> Option<u32> {
        match self {
            Space::Grid(g) => g.step_end(start, steps),
            Space::Graph(g) => g.path_end(start, steps),
        }
    }

    /// End vertex of a valid path.
    pub fn path_end(&self, start: u32, steps: &[u32]) -> u32 {
        self.try_end(start, steps).expect("valid path")
    }

    /// Every path from `v` with at most `max_len` steps, the constant path
    /// first, in lexicographic order of steps.
    pub fn paths_from(&self, v: u32, max_len: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut stack = vec![(v, Vec::new())];
        while let Some((at, steps)) = stack.pop() {
            let next: Vec<(u32, u32)> = if steps.len() < max_len {
                match self {
                    Space::Grid(g) => [STEP_R, STEP_U]
                        .into_iter()
                        .filter_map(|s| g.step_end(at, &[s]).map(|e| (s, e)))
                        .collect(),
                    Space::Graph(g) => g
                        .edges
                        .iter()
                        .enumerate()
                        .filter(|(_, e)| e.src == at)
                        .map(|(i, e)| (i as u32, e.dst))
                        .collect(),
                }
            } else {
                vec![]
            };
            for (s, end) in next.into_iter().rev() {
                let mut w = steps.clone();
                w.push(s);
                stack.push((end, w));
            }
            out.push(steps);
        }
        out
    }

    /// Longest path length, if there is one.
    pub fn max_path_length(&self) -> Option<usize> {
        match self {
            Space::Grid(g) => Some((g.width + g.height) as usize),
            Space::Graph(g) => g.longest_path(),
        }
    }

    pub fn vertex_label(&self, v: u32) -> String {
        match self {
            Space::Grid(g) => {
                let (x, y) = g.coords(v);
                format!("{x},{y}")
            }
            Space::Graph(g) => g.vertices[v as usize].clone(),
        }
    }

    pub fn parse_vertex(&self, s: &str) -> Option<u32> {
        match self {
            Space::Grid(g) => {
                let (x, y) = s.split_once(',')?;
                let (x, y) = (x.trim().parse().ok()?, y.trim().parse().ok()?);
                g.contains_vertex(x, y).then(|| g.vertex(x, y))
            }
            Space::Graph(g) => g.vertex_index(s.trim()),
        }
    }

    /// `x,y:RRU` for grids, `v:e1.e2` for graphs.
    pub fn label_path(&self, start: u32, steps: &[u32]) -> String {
        let body = match self {
            Space::Grid(_) => steps.iter().map(|&s| if s == STEP_R { 'R' } else { 'U' }).collect(),
            Space::Graph(g) => steps
                .iter()
                .map(|&e| g.edges[e as usize].label.as_str())
                .collect::<Vec<_>>()
                .join("."),
        };
        format!("{}:{}", self.vertex_label(start), body)
    }

    pub fn parse_path(&self, s: &str) -> Option<(u32, Vec<u32>)> {
        let (v, body) = s.split_once(':')?;
        let start = self.parse_vertex(v)?;
        let body = body.trim();
        let steps: Vec<u32> = match self {
            Space::Grid(_) => body
                .chars()
                .map(|c| match c {
                    'R' => Some(STEP_R),
                    'U' => Some(STEP_U),
                    _ => None,
                })
                .collect::<Option<_>>()?,
            Space::Graph(_) if body.is_empty() => vec![],
            Space::Graph(g) => body.split('.').map(|e| g.edge_index(e)).collect::<Option<_>>()?,
        };
        self.path_valid(start, &steps).then_some((start, steps))
    }
}
