//! Combinatorial plane embeddings: rotation systems, face traversal and the
//! surgeries the planar solver performs on them.

mod planarity;
mod surgery;

pub use planarity::embed;
pub use surgery::{
    apply_merger, doubled_potential, find_guaranteed_merger, mergeable_triples,
    split_high_degree_vertex, suppress_degree2_vertex, MergerSpec, SplitMap,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{components, Edge, Graph, VertexId, Weight};

/// Cyclic (clockwise) order of neighbors around every vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RotationSystem {
    order: BTreeMap<VertexId, Vec<VertexId>>,
}

impl RotationSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_lists(lists: impl IntoIterator<Item = (VertexId, Vec<VertexId>)>) -> Self {
        RotationSystem {
            order: lists.into_iter().collect(),
        }
    }

    pub fn around(&self, v: VertexId) -> &[VertexId] {
        self.order.get(&v).map_or(&[], Vec::as_slice)
    }

    pub fn set(&mut self, v: VertexId, neighbors: Vec<VertexId>) {
        self.order.insert(v, neighbors);
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &[VertexId])> {
        self.order.iter().map(|(&v, l)| (v, l.as_slice()))
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if let Some(nb) = self.order.remove(&v) {
            for u in nb {
                if let Some(l) = self.order.get_mut(&u) {
                    l.retain(|&x| x != v);
                }
            }
        }
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        if let Some(l) = self.order.get_mut(&u) {
            l.retain(|&x| x != v);
        }
        if let Some(l) = self.order.get_mut(&v) {
            l.retain(|&x| x != u);
        }
    }

    /// Replaces `old` by `new` in the rotation at `v`, keeping its position.
    pub fn replace_neighbor(&mut self, v: VertexId, old: VertexId, new: VertexId) {
        if let Some(l) = self.order.get_mut(&v) {
            for x in l.iter_mut() {
                if *x == old {
                    *x = new;
                }
            }
        }
    }

    /// Restriction to the edges of `g`; vertices not in `g` are dropped.
    pub fn restricted_to(&self, g: &Graph) -> RotationSystem {
        RotationSystem {
            order: g
                .vertices()
                .map(|v| {
                    let l = self
                        .around(v)
                        .iter()
                        .copied()
                        .filter(|&u| g.has_edge(v, u))
                        .collect();
                    (v, l)
                })
                .collect(),
        }
    }

    fn check_against(&self, g: &Graph) -> Result<()> {
        for v in g.vertices() {
            let l = self.around(v);
            if !self.order.contains_key(&v) && g.degree(v) > 0 {
                return Err(Error::InvalidRotation(format!(
                    "no rotation for vertex {v}"
                )));
            }
            let set: BTreeSet<VertexId> = l.iter().copied().collect();
            if set.len() != l.len() {
                return Err(Error::InvalidRotation(format!(
                    "rotation at {v} repeats a neighbor"
                )));
            }
            if set != g.neighbors(v).collect() {
                return Err(Error::InvalidRotation(format!(
                    "rotation at {v} does not match its neighbors"
                )));
            }
        }
        if let Some(v) = self.order.keys().find(|v| !g.contains(**v)) {
            return Err(Error::InvalidRotation(format!(
                "unknown vertex {v} in rotation"
            )));
        }
        Ok(())
    }
}

/// A face given by its boundary closed walk of directed edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub id: usize,
    pub darts: Vec<(VertexId, VertexId)>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.darts.iter().map(|d| d.0).collect()
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.darts.iter().map(|&(u, v)| Edge::new(u, v)).collect()
    }

    /// Vertex sequence of the boundary walk.
    pub fn walk(&self) -> Vec<VertexId> {
        self.darts.iter().map(|d| d.0).collect()
    }

    pub fn weight(&self, g: &Graph) -> Weight {
        self.darts
            .iter()
            .map(|&(u, v)| g.weight(u, v).unwrap_or(0))
            .sum()
    }
}

/// A graph together with a validated plane rotation system and its faces.
#[derive(Clone, Debug)]
pub struct PlaneGraph {
    graph: Graph,
    rotation: RotationSystem,
    faces: Vec<Face>,
    dart_face: HashMap<(VertexId, VertexId), usize>,
}

impl PlaneGraph {
    pub fn new(graph: Graph, rotation: RotationSystem) -> Result<Self> {
        faces_of(&graph, &rotation).map(|(faces, dart_face)| PlaneGraph {
            graph,
            rotation,
            faces,
            dart_face,
        })
    }

    /// Embeds `graph` with [`embed`].
    pub fn embedded(graph: Graph) -> Result<Self> {
        let rot = embed(&graph)?;
        PlaneGraph::new(graph, rot)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn rotation(&self) -> &RotationSystem {
        &self.rotation
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn into_parts(self) -> (Graph, RotationSystem) {
        (self.graph, self.rotation)
    }

    /// Face to the traversal side of the directed edge `u -> v`.
    pub fn face_of_dart(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.dart_face.get(&(u, v)).copied()
    }

    /// The faces on the two sides of an edge.
    pub fn edge_faces(&self, e: Edge) -> Option<(usize, usize)> {
        Some((self.face_of_dart(e.0, e.1)?, self.face_of_dart(e.1, e.0)?))
    }

    /// Faces whose boundary passes through `v`, ascending.
    pub fn faces_around(&self, v: VertexId) -> BTreeSet<usize> {
        self.rotation
            .around(v)
            .iter()
            .filter_map(|&u| self.face_of_dart(v, u))
            .collect()
    }

    /// Number of faces of the whole drawing, with the outer faces of all
    /// components identified.
    pub fn global_face_count(&self) -> usize {
        let edge_components = components(&self.graph)
            .iter()
            .filter(|comp| comp.iter().any(|&v| self.graph.degree(v) > 0))
            .count();
        self.faces.len() + 1 - edge_components.min(self.faces.len().max(1))
    }

    /// `n - m + f == 1 + c` for the drawing as a whole.
    pub fn euler_holds(&self) -> bool {
        if self.graph.is_empty() {
            return true;
        }
        let c = components(&self.graph).len() as i64;
        let f = self.global_face_count() as i64;
        self.graph.n() as i64 - self.graph.m() as i64 + f == 1 + c
    }
}

type Faces = (Vec<Face>, HashMap<(VertexId, VertexId), usize>);

/// Traces every face of `rot` and checks Euler's relation on each component.
/// The dart after `u -> v` is `v -> w` where `w` follows `u` in the rotation
/// at `v`.
pub fn faces_of(g: &Graph, rot: &RotationSystem) -> Result<Faces> {
    rot.check_against(g)?;
    let mut position: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    for (v, l) in rot.iter() {
        for (i, &u) in l.iter().enumerate() {
            position.insert((v, u), i);
        }
    }
    let next = |u: VertexId, v: VertexId| -> (VertexId, VertexId) {
        let l = rot.around(v);
        let i = position[&(v, u)];
        (v, l[(i + 1) % l.len()])
    };
    let mut darts: Vec<(VertexId, VertexId)> = position.keys().copied().collect();
    darts.sort();
    let mut dart_face = HashMap::with_capacity(darts.len());
    let mut faces = Vec::new();
    for &start in &darts {
        if dart_face.contains_key(&start) {
            continue;
        }
        let id = faces.len();
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            dart_face.insert(d, id);
            walk.push(d);
            d = next(d.0, d.1);
            if d == start {
                break;
            }
            if dart_face.contains_key(&d) {
                return Err(Error::InvalidRotation(
                    "face traversal is not a permutation".into(),
                ));
            }
        }
        faces.push(Face { id, darts: walk });
    }

    for comp in components(g) {
        let members: BTreeSet<VertexId> = comp.iter().copied().collect();
        let n = members.len() as i64;
        let m = comp.iter().map(|&v| g.degree(v)).sum::<usize>() as i64 / 2;
        if m == 0 {
            continue;
        }
        let f = faces
            .iter()
            .filter(|f| members.contains(&f.darts[0].0))
            .count() as i64;
        if n - m + f != 2 {
            return Err(Error::NonPlanarRotation(format!(
                "component of vertex {}: n - m + f = {} - {} + {} != 2",
                comp[0], n, m, f
            )));
        }
    }
    Ok((faces, dart_face))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn rot(lists: &[(u32, &[u32])]) -> RotationSystem {
        RotationSystem::from_lists(
            lists
                .iter()
                .map(|(a, l)| (v(*a), l.iter().map(|&x| v(x)).collect())),
        )
    }

    #[test]
    fn cycle_has_two_faces() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let r = rot(&[
            (0, &[1, 4]),
            (1, &[2, 0]),
            (2, &[3, 1]),
            (3, &[4, 2]),
            (4, &[0, 3]),
        ]);
        let pg = PlaneGraph::new(g, r).unwrap();
        assert_eq!(pg.faces().len(), 2);
        assert!(pg.faces().iter().all(|f| f.len() == 5));
        assert!(pg.euler_holds());
    }

    #[test]
    fn k4_planar_rotation() {
        let g = Graph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        // 0 in the middle of triangle 1-2-3.
        let r = rot(&[
            (0, &[1, 2, 3]),
            (1, &[0, 3, 2]),
            (2, &[0, 1, 3]),
            (3, &[0, 2, 1]),
        ]);
        let pg = PlaneGraph::new(g.clone(), r).unwrap();
        assert_eq!(pg.faces().len(), 4);
        assert!(pg.faces().iter().all(|f| f.len() == 3));
        // Flipping one rotation breaks planarity.
        let bad = rot(&[
            (0, &[1, 3, 2]),
            (1, &[0, 3, 2]),
            (2, &[0, 1, 3]),
            (3, &[0, 2, 1]),
        ]);
        assert!(matches!(
            PlaneGraph::new(g, bad),
            Err(Error::NonPlanarRotation(_))
        ));
    }

    #[test]
    fn rotation_must_match_graph() {
        let g = Graph::from_edges(&[(0, 1), (1, 2)]).unwrap();
        let r = rot(&[(0, &[1]), (1, &[0]), (2, &[1])]);
        assert!(matches!(faces_of(&g, &r), Err(Error::InvalidRotation(_))));
        let r = rot(&[(0, &[1]), (1, &[0, 2, 0]), (2, &[1])]);
        assert!(matches!(faces_of(&g, &r), Err(Error::InvalidRotation(_))));
    }

    #[test]
    fn tree_has_one_face() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (1, 3)]).unwrap();
        let r = rot(&[(0, &[1]), (1, &[0, 2, 3]), (2, &[1]), (3, &[1])]);
        let pg = PlaneGraph::new(g, r).unwrap();
        assert_eq!(pg.faces().len(), 1);
        assert_eq!(pg.faces()[0].len(), 6);
    }
}
