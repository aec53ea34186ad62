use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::pi1::{trace_monoid, Pi1Module};
use super::space::Space;
use crate::absorption_monoid::{MonElement, MonoidMorphism};
use crate::error::{Error, Result};
use crate::pointed_modules::ModuleMorphism;

/// Presentation of a d-map between combinatorial spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DMap {
    /// `(x, y) -> (x + dx, y + dy)` between grids.
    GridTranslation { dx: u32, dy: u32 },
    /// Vertex and edge images (by index) between graphs.
    Graph { vertex_map: Vec<u32>, edge_map: Vec<u32> },
}

/// A validated injective d-map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceMap {
    source: Space,
    target: Space,
    map: DMap,
}

impl SpaceMap {
    /// Validate that `map` sends vertices to vertices, d-steps to d-steps and
    /// is injective.
    pub fn new(source: Space, target: Space, map: DMap) -> Result<Self> {
        match (&source, &target, &map) {
            (Space::Grid(s), Space::Grid(t), DMap::GridTranslation { dx, dy }) => {
                if s.width + dx > t.width || s.height + dy > t.height {
                    return Err(Error::NotADMap(format!(
                        "translation by ({dx},{dy}) moves a {}x{} grid outside a {}x{} grid",
                        s.width, s.height, t.width, t.height
                    )));
                }
            }
            (Space::Graph(s), Space::Graph(t), DMap::Graph { vertex_map, edge_map }) => {
                if vertex_map.len() != s.vertices.len() || edge_map.len() != s.edges.len() {
                    return Err(Error::NotADMap("vertex or edge map has the wrong length".into()));
                }
                if vertex_map.iter().any(|&v| v as usize >= t.vertices.len())
                    || edge_map.iter().any(|&e| e as usize >= t.edges.len())
                {
                    return Err(Error::NotADMap("image outside the target graph".into()));
                }
                if vertex_map.iter().collect::<BTreeSet<_>>().len() != vertex_map.len() {
                    return Err(Error::NotInjective("two vertices share an image".into()));
                }
                if edge_map.iter().collect::<BTreeSet<_>>().len() != edge_map.len() {
                    return Err(Error::NotInjective("two edges share an image".into()));
                }
                for (i, e) in s.edges.iter().enumerate() {
                    let img = &t.edges[edge_map[i] as usize];
                    if img.src != vertex_map[e.src as usize] || img.dst != vertex_map[e.dst as usize] {
                        return Err(Error::NotADMap(format!(
                            "edge {} is not sent to an edge between the images of its endpoints",
                            e.label
                        )));
                    }
                }
            }
            _ => return Err(Error::TypeMismatch("map does not match the kinds of its spaces".into())),
        }
        Ok(SpaceMap { source, target, map })
    }

    pub fn identity(space: &Space) -> Self {
        let map = match space {
            Space::Grid(_) => DMap::GridTranslation { dx: 0, dy: 0 },
            Space::Graph(g) => DMap::Graph {
                vertex_map: (0..g.vertices.len() as u32).collect(),
                edge_map: (0..g.edges.len() as u32).collect(),
            },
        };
        SpaceMap {
            source: space.clone(),
            target: space.clone(),
            map,
        }
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn dmap(&self) -> &DMap {
        &self.map
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &SpaceMap) -> Result<SpaceMap> {
        if self.target != g.source {
            return Err(Error::TypeMismatch("maps are not composable".into()));
        }
        let map = match (&self.map, &g.map) {
            (DMap::GridTranslation { dx: a, dy: b }, DMap::GridTranslation { dx: c, dy: d }) => {
                DMap::GridTranslation { dx: a + c, dy: b + d }
            }
            (
                DMap::Graph { vertex_map: v1, edge_map: e1 },
                DMap::Graph { vertex_map: v2, edge_map: e2 },
            ) => DMap::Graph {
                vertex_map: v1.iter().map(|&v| v2[v as usize]).collect(),
                edge_map: e1.iter().map(|&e| e2[e as usize]).collect(),
            },
            _ => return Err(Error::TypeMismatch("maps of different kinds".into())),
        };
        SpaceMap::new(self.source.clone(), g.target.clone(), map)
    }

    pub fn map_vertex(&self, v: u32) -> u32 {
        match (&self.source, &self.target, &self.map) {
            (Space::Grid(s), Space::Grid(t), DMap::GridTranslation { dx, dy }) => {
                let (x, y) = s.coords(v);
                t.vertex(x + dx, y + dy)
            }
            (_, _, DMap::Graph { vertex_map, .. }) => vertex_map[v as usize],
            _ => unreachable!("validated on construction"),
        }
    }

    /// Image of a path handle (steps of a translated grid path are unchanged).
    pub fn map_path(&self, x: &MonElement) -> MonElement {
        match x {
            MonElement::Word(w) => {
                let mut out = vec![self.map_vertex(w[0])];
                match &self.map {
                    DMap::GridTranslation { .. } => out.extend_from_slice(&w[1..]),
                    DMap::Graph { edge_map, .. } => out.extend(w[1..].iter().map(|&e| edge_map[e as usize])),
                }
                MonElement::Word(out)
            }
            other => other.clone(),
        }
    }

    /// Every square swap allowed in the source must stay allowed in the
    /// target, otherwise dihomotopic paths could map to different classes.
    pub fn check_swaps(&self) -> Result<()> {
        if let (Space::Grid(s), Space::Grid(t), DMap::GridTranslation { dx, dy }) = (&self.source, &self.target, &self.map) {
            for x in 0..s.width {
                for y in 0..s.height {
                    if !s.is_forbidden(x, y) && t.is_forbidden(x + dx, y + dy) {
                        return Err(Error::SwapViolation { cell: (x, y) });
                    }
                }
            }
        }
        Ok(())
    }
}

/// `T(f)`: the trace monoid morphism `[p] -> [f ∘ p]`.
pub fn trace_monoid_map(f: &SpaceMap) -> MonoidMorphism {
    let g = f.clone();
    MonoidMorphism::from_fn(trace_monoid(&f.source), trace_monoid(&f.target), move |x| g.map_path(x))
}

/// `π1(f)`: class `[g]` to class `[f ∘ g]`, paired with `T(f)` on scalars.
pub fn pi1_map(f: &SpaceMap, source: &Pi1Module, target: &Pi1Module) -> Result<ModuleMorphism> {
    if source.space() != f.source() || target.space() != f.target() {
        return Err(Error::TypeMismatch("modules do not match the map's spaces".into()));
    }
    f.check_swaps()?;
    let g = f.clone();
    let tgt = target.clone();
    ModuleMorphism::new(
        source.left().clone(),
        target.left().clone(),
        move |x| tgt.classes().class_of(&g.map_path(x)),
        trace_monoid_map(f),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directed_space::GridSpace;

    fn grid(w: u32, h: u32, holes: &[(u32, u32)]) -> Space {
        Space::Grid(GridSpace::new(w, h).unwrap().with_forbidden(holes).unwrap())
    }

    #[test]
    fn identity_is_identity() {
        let s = grid(2, 2, &[]);
        let t = trace_monoid_map(&SpaceMap::identity(&s));
        assert!(t.agrees_with(&MonoidMorphism::identity(&trace_monoid(&s)), 4));
        assert!(t.check_morphism(4).is_ok());
    }

    #[test]
    fn translation_preserves_composability() {
        let f = SpaceMap::new(grid(2, 2, &[]), grid(4, 4, &[]), DMap::GridTranslation { dx: 1, dy: 2 }).unwrap();
        let r = trace_monoid_map(&f).check_morphism(4);
        assert!(r.is_ok(), "{r}");
    }

    #[test]
    fn translation_out_of_bounds() {
        let err = SpaceMap::new(grid(2, 2, &[]), grid(3, 3, &[]), DMap::GridTranslation { dx: 2, dy: 0 }).unwrap_err();
        assert!(matches!(err, Error::NotADMap(_)));
    }

    #[test]
    fn swap_violation() {
        let f = SpaceMap::new(grid(2, 2, &[]), grid(3, 3, &[(1, 1)]), DMap::GridTranslation { dx: 0, dy: 0 }).unwrap();
        let (src, tgt) = (Pi1Module::new(f.source()), Pi1Module::new(f.target()));
        assert_eq!(pi1_map(&f, &src, &tgt).unwrap_err(), Error::SwapViolation { cell: (1, 1) });
    }

    #[test]
    fn empty_grid_embedding_on_classes() {
        let f = SpaceMap::new(grid(2, 2, &[]), grid(3, 3, &[]), DMap::GridTranslation { dx: 1, dy: 1 }).unwrap();
        let (src, tgt) = (Pi1Module::new(f.source()), Pi1Module::new(f.target()));
        let m = pi1_map(&f, &src, &tgt).unwrap();
        let r = m.check(3);
        assert!(r.is_ok(), "{r}");
    }

    #[test]
    fn non_injective_graph_map() {
        let mut g = crate::directed_space::DirectedGraph::new();
        g.add_vertex("a").unwrap();
        g.add_vertex("b").unwrap();
        let mut h = crate::directed_space::DirectedGraph::new();
        h.add_vertex("c").unwrap();
        let err = SpaceMap::new(
            Space::Graph(g),
            Space::Graph(h),
            DMap::Graph { vertex_map: vec![0, 0], edge_map: vec![] },
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotInjective(_)));
    }
}
