//! Simple undirected graphs with stable vertex ids and integer edge weights.

mod connectivity;
mod cycles;

pub use connectivity::{
    biconnected_components, bridges, components, connectivity_le3, cut_vertices, is_connected,
    is_two_connected, min_side_two_edge_cut, two_edge_cuts, Connectivity, CutKind, CutStructure,
};
pub use cycles::{girth, is_forest, shortest_cycle, validate_fvs, weighted_girth, Girth};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Weight = u64;

/// Opaque vertex identity. Ids survive reductions so that sets computed on a
/// reduced graph can be mapped back onto the original.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// Undirected edge stored with its endpoints in ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub VertexId, pub VertexId);

impl Edge {
    pub fn new(u: VertexId, v: VertexId) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeMap<VertexId, Weight>>,
    // Smallest id never handed out; kept across derived graphs so fresh
    // vertices never collide with ids used earlier in a reduction chain.
    next_id: u32,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn with_vertices(n: u32) -> Self {
        let mut g = Self::new();
        for v in 0..n {
            g.adj.insert(VertexId(v), BTreeMap::new());
        }
        g.next_id = n;
        g
    }

    /// Unit-weight graph on the listed edges; vertices are the endpoints.
    pub fn from_edges(edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Self::new();
        for &(u, v) in edges {
            g.ensure_vertex(VertexId(u));
            g.ensure_vertex(VertexId(v));
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.values().map(BTreeMap::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<()> {
        if self.adj.contains_key(&v) {
            return Err(Error::DuplicateVertex(v));
        }
        self.adj.insert(v, BTreeMap::new());
        self.next_id = self.next_id.max(v.0 + 1);
        Ok(())
    }

    pub fn ensure_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
        self.next_id = self.next_id.max(v.0 + 1);
    }

    /// Allocates a vertex whose id is above every id this graph (or any graph
    /// it was derived from) has used.
    pub fn fresh_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_id);
        self.next_id += 1;
        self.adj.insert(v, BTreeMap::new());
        v
    }

    pub fn next_id(&self) -> u32 {
        self.next_id
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.add_weighted_edge(u, v, 1)
    }

    pub fn add_weighted_edge(&mut self, u: VertexId, v: VertexId, w: Weight) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        for x in [u, v] {
            if !self.adj.contains_key(&x) {
                return Err(Error::MemberNotInGraph(x));
            }
        }
        if self.adj[&u].contains_key(&v) {
            return Err(Error::ParallelEdge(u, v));
        }
        self.adj.get_mut(&u).unwrap().insert(v, w);
        self.adj.get_mut(&v).unwrap().insert(u, w);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) -> Result<Weight> {
        let w = self
            .adj
            .get_mut(&u)
            .and_then(|nb| nb.remove(&v))
            .ok_or(Error::MissingEdge(u, v))?;
        self.adj.get_mut(&v).unwrap().remove(&u);
        Ok(w)
    }

    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        let nbrs = self.adj.remove(&v).ok_or(Error::MemberNotInGraph(v))?;
        for u in nbrs.keys() {
            self.adj.get_mut(u).unwrap().remove(&v);
        }
        Ok(())
    }

    pub fn set_weight(&mut self, u: VertexId, v: VertexId, w: Weight) -> Result<()> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        self.adj.get_mut(&u).unwrap().insert(v, w);
        self.adj.get_mut(&v).unwrap().insert(u, w);
        Ok(())
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).is_some_and(|nb| nb.contains_key(&v))
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<Weight> {
        self.adj.get(&u).and_then(|nb| nb.get(&v)).copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, BTreeMap::len)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeMap::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    /// Neighbors in ascending id order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj
            .get(&v)
            .into_iter()
            .flat_map(|nb| nb.keys().copied())
    }

    pub fn neighbor_vec(&self, v: VertexId) -> Vec<VertexId> {
        self.neighbors(v).collect()
    }

    /// Edges in ascending order, each listed once.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, nb)| nb.keys().filter(move |&&v| u < v).map(move |&v| Edge(u, v)))
    }

    pub fn weighted_edges(&self) -> impl Iterator<Item = (Edge, Weight)> + '_ {
        self.adj.iter().flat_map(|(&u, nb)| {
            nb.iter()
                .filter(move |(&v, _)| u < v)
                .map(move |(&v, &w)| (Edge(u, v), w))
        })
    }

    pub fn total_weight(&self) -> Weight {
        self.weighted_edges().map(|(_, w)| w).sum()
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.weighted_edges().all(|(_, w)| w == 1)
    }

    /// Copy of the graph with every weight set to 1.
    pub fn unit_weighted(&self) -> Graph {
        let mut g = self.clone();
        for nb in g.adj.values_mut() {
            for w in nb.values_mut() {
                *w = 1;
            }
        }
        g
    }

    pub fn is_cubic(&self) -> bool {
        !self.is_empty() && self.adj.values().all(|nb| nb.len() == 3)
    }

    pub fn common_neighbors(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        match (self.adj.get(&u), self.adj.get(&v)) {
            (Some(a), Some(b)) => a.keys().filter(|x| b.contains_key(x)).copied().collect(),
            _ => Vec::new(),
        }
    }

    pub fn without_vertices<'a>(&self, removed: impl IntoIterator<Item = &'a VertexId>) -> Graph {
        let mut g = self.clone();
        for v in removed {
            let _ = g.remove_vertex(*v);
        }
        g
    }

    pub fn induced_subgraph(&self, keep: &BTreeSet<VertexId>) -> Graph {
        let mut adj = BTreeMap::new();
        for &v in keep {
            if let Some(nb) = self.adj.get(&v) {
                adj.insert(
                    v,
                    nb.iter()
                        .filter(|(u, _)| keep.contains(u))
                        .map(|(&u, &w)| (u, w))
                        .collect(),
                );
            }
        }
        Graph {
            adj,
            next_id: self.next_id,
        }
    }

    /// Subgraph formed by the given edges and their endpoints.
    pub fn edge_subgraph(&self, edges: &[Edge]) -> Graph {
        let mut g = Graph {
            adj: BTreeMap::new(),
            next_id: self.next_id,
        };
        for e in edges {
            let w = self.weight(e.0, e.1).unwrap_or(1);
            g.adj.entry(e.0).or_default().insert(e.1, w);
            g.adj.entry(e.1).or_default().insert(e.0, w);
        }
        g
    }

    /// Disjoint union; ids of `other` are shifted above this graph's ids.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.next_id;
        let mut g = self.clone();
        for v in other.vertices() {
            g.ensure_vertex(VertexId(v.0 + shift));
        }
        for (e, w) in other.weighted_edges() {
            g.add_weighted_edge(VertexId(e.0 .0 + shift), VertexId(e.1 .0 + shift), w)
                .expect("disjoint copies cannot clash");
        }
        g.next_id = shift + other.next_id;
        g
    }

    pub(crate) fn indexed(&self) -> Indexed {
        Indexed::new(self)
    }
}

/// Dense 0..n view of a [`Graph`] for traversal-heavy algorithms.
#[derive(Clone, Debug)]
pub(crate) struct Indexed {
    pub ids: Vec<VertexId>,
    pub index: HashMap<VertexId, usize>,
    pub adj: Vec<Vec<(usize, Weight)>>,
}

impl Indexed {
    fn new(g: &Graph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let index: HashMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids
            .iter()
            .map(|v| {
                g.adj[v]
                    .iter()
                    .map(|(u, &w)| (index[u], w))
                    .collect::<Vec<_>>()
            })
            .collect();
        Indexed { ids, index, adj }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_parallel_edges() {
        let mut g = Graph::with_vertices(3);
        assert!(matches!(
            g.add_edge(VertexId(1), VertexId(1)),
            Err(Error::SelfLoop(_))
        ));
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        assert!(matches!(
            g.add_edge(VertexId(1), VertexId(0)),
            Err(Error::ParallelEdge(..))
        ));
        assert!(matches!(
            g.add_edge(VertexId(0), VertexId(7)),
            Err(Error::MemberNotInGraph(_))
        ));
    }

    #[test]
    fn fresh_ids_stay_above_removed_ones() {
        let mut g = Graph::with_vertices(5);
        g.remove_vertex(VertexId(4)).unwrap();
        assert_eq!(g.fresh_vertex(), VertexId(5));
        let h = g.without_vertices(&[VertexId(5)]);
        let mut h2 = h.clone();
        assert_eq!(h2.fresh_vertex(), VertexId(6));
    }

    #[test]
    fn zero_weights_are_legal() {
        let mut g = Graph::with_vertices(2);
        g.add_weighted_edge(VertexId(0), VertexId(1), 0).unwrap();
        assert_eq!(g.total_weight(), 0);
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![Edge(VertexId(0), VertexId(1))]
        );
    }
}
