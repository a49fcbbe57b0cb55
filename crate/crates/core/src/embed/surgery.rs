use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::PlaneGraph;
use crate::error::{Error, Result};
use crate::graph::{is_two_connected, Edge, Graph, VertexId, Weight};

/// Three mergeable faces: `f1` shares a boundary edge with both `f0` and
/// `f2`, and `crucial` lies on all three boundaries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergerSpec {
    pub f0: usize,
    pub f1: usize,
    pub f2: usize,
    pub crucial: VertexId,
    /// Every edge lying on the boundary of two of the three faces, sorted.
    pub removed_edges: Vec<Edge>,
    pub removed_weight: Weight,
}

impl MergerSpec {
    /// `removed_weight >= 3g/4`, in integers.
    pub fn is_nice(&self, g: Weight) -> bool {
        4 * self.removed_weight >= 3 * g
    }
}

/// Records that `w` and `w_prime` both stand for the split vertex `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitMap {
    pub w: VertexId,
    pub w_prime: VertexId,
    pub v: VertexId,
}

/// `sum over v of max(1, 2d(v) - 5)`.
pub fn doubled_potential(g: &Graph) -> u64 {
    g.vertices()
        .map(|v| (2 * g.degree(v) as i64 - 5).max(1) as u64)
        .sum()
}

/// Edges separating two distinct faces, keyed by the face pair.
fn shared_edges(pg: &PlaneGraph) -> BTreeMap<(usize, usize), BTreeSet<Edge>> {
    let mut out: BTreeMap<(usize, usize), BTreeSet<Edge>> = BTreeMap::new();
    for e in pg.graph().edges() {
        let (a, b) = pg.edge_faces(e).expect("every edge has two darts");
        if a != b {
            out.entry((a.min(b), a.max(b))).or_default().insert(e);
        }
    }
    out
}

fn pair(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn build_spec(
    pg: &PlaneGraph,
    shared: &BTreeMap<(usize, usize), BTreeSet<Edge>>,
    f0: usize,
    f1: usize,
    f2: usize,
    crucial: VertexId,
) -> MergerSpec {
    let mut removed = BTreeSet::new();
    for key in [pair(f0, f1), pair(f1, f2), pair(f0, f2)] {
        if let Some(es) = shared.get(&key) {
            removed.extend(es.iter().copied());
        }
    }
    let removed_weight = removed
        .iter()
        .map(|e| pg.graph().weight(e.0, e.1).unwrap_or(0))
        .sum();
    MergerSpec {
        f0,
        f1,
        f2,
        crucial,
        removed_edges: removed.into_iter().collect(),
        removed_weight,
    }
}

/// The merger around a face with at most two vertices of degree at least 3
/// on its boundary. Such a face borders exactly two other faces, and the
/// merger removes its whole boundary, so its weight is at least the weighted
/// girth. Faces are scanned by id and the crucial vertex is the smallest
/// candidate.
pub fn find_guaranteed_merger(pg: &PlaneGraph, g: Weight) -> Result<Option<MergerSpec>> {
    let graph = pg.graph();
    if !is_two_connected(graph) {
        return Err(Error::PreconditionViolated(
            "merger search needs a 2-connected graph".into(),
        ));
    }
    if graph.m() == graph.n() {
        return Err(Error::PreconditionViolated(
            "merger search needs a graph that is not a single cycle".into(),
        ));
    }
    let shared = shared_edges(pg);
    for face in pg.faces() {
        let heavy = face
            .vertices()
            .into_iter()
            .filter(|&v| graph.degree(v) >= 3)
            .count();
        if heavy > 2 {
            continue;
        }
        let mut side_of: BTreeMap<Edge, usize> = BTreeMap::new();
        for &(u, v) in &face.darts {
            side_of.insert(Edge::new(u, v), pg.face_of_dart(v, u).unwrap());
        }
        let neighbors: BTreeSet<usize> = side_of.values().copied().collect();
        if neighbors.len() != 2 || neighbors.contains(&face.id) {
            continue;
        }
        let mut it = neighbors.iter();
        let (f0, f2) = (*it.next().unwrap(), *it.next().unwrap());
        let crucial = face.vertices().into_iter().find(|&v| {
            let touching: BTreeSet<usize> = side_of
                .iter()
                .filter(|(e, _)| e.contains(v))
                .map(|(_, &f)| f)
                .collect();
            touching.contains(&f0) && touching.contains(&f2)
        });
        let Some(crucial) = crucial else { continue };
        let spec = build_spec(pg, &shared, f0, face.id, f2, crucial);
        if spec.is_nice(g) {
            return Ok(Some(spec));
        }
    }
    Ok(None)
}

/// Every mergeable triple, one per unordered face triple, with the smallest
/// admissible crucial vertex. Ordered by sorted face ids.
pub fn mergeable_triples(pg: &PlaneGraph) -> Vec<MergerSpec> {
    let shared = shared_edges(pg);
    let mut adjacent: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(a, b) in shared.keys() {
        adjacent.entry(a).or_default().insert(b);
        adjacent.entry(b).or_default().insert(a);
    }
    let boundary: Vec<BTreeSet<VertexId>> = pg.faces().iter().map(|f| f.vertices()).collect();
    let mut found: BTreeMap<[usize; 3], MergerSpec> = BTreeMap::new();
    for (&mid, nb) in &adjacent {
        let nb: Vec<usize> = nb.iter().copied().collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                let (f0, f2) = (nb[i], nb[j]);
                let mut key = [f0, mid, f2];
                key.sort();
                if found.contains_key(&key) {
                    continue;
                }
                let crucial = boundary[mid]
                    .iter()
                    .find(|v| boundary[f0].contains(v) && boundary[f2].contains(v));
                if let Some(&c) = crucial {
                    found.insert(key, build_spec(pg, &shared, f0, mid, f2, c));
                }
            }
        }
    }
    found.into_values().collect()
}

/// Deletes the merger's edges and every vertex left isolated by it.
pub fn apply_merger(pg: &PlaneGraph, spec: &MergerSpec) -> Result<PlaneGraph> {
    let nf = pg.faces().len();
    let (f0, f1, f2) = (spec.f0, spec.f1, spec.f2);
    if f0 >= nf || f1 >= nf || f2 >= nf {
        return Err(Error::InvalidMerger("face id out of range".into()));
    }
    if f0 == f1 || f1 == f2 || f0 == f2 {
        return Err(Error::InvalidMerger("faces must be distinct".into()));
    }
    let on_all = [f0, f1, f2]
        .iter()
        .all(|&f| pg.face(f).vertices().contains(&spec.crucial));
    if !on_all {
        return Err(Error::InvalidMerger(format!(
            "crucial vertex {} is not on all three faces",
            spec.crucial
        )));
    }
    let shared = shared_edges(pg);
    if !shared.contains_key(&pair(f0, f1)) || !shared.contains_key(&pair(f1, f2)) {
        return Err(Error::InvalidMerger(
            "middle face must share an edge with both others".into(),
        ));
    }
    let expected = build_spec(pg, &shared, f0, f1, f2, spec.crucial);
    if expected.removed_edges != spec.removed_edges
        || expected.removed_weight != spec.removed_weight
    {
        return Err(Error::InvalidMerger(
            "removed edges do not match the three faces".into(),
        ));
    }
    let (mut graph, mut rot) = pg.clone().into_parts();
    let mut touched = BTreeSet::new();
    for e in &spec.removed_edges {
        graph.remove_edge(e.0, e.1)?;
        rot.remove_edge(e.0, e.1);
        touched.insert(e.0);
        touched.insert(e.1);
    }
    for v in touched {
        if graph.degree(v) == 0 {
            graph.remove_vertex(v)?;
            rot.remove_vertex(v);
        }
    }
    PlaneGraph::new(graph, rot)
}

/// Replaces `v` (degree `d >= 4`) by adjacent vertices `w` and `w'`. `w`
/// keeps the two rotation-consecutive neighbors starting at the smallest
/// neighbor, `w'` keeps the others, and `ww'` gets weight 0.
pub fn split_high_degree_vertex(pg: &PlaneGraph, v: VertexId) -> Result<(PlaneGraph, SplitMap)> {
    if !pg.graph().contains(v) {
        return Err(Error::MemberNotInGraph(v));
    }
    let d = pg.graph().degree(v);
    if d < 4 {
        return Err(Error::PreconditionViolated(format!(
            "vertex {v} has degree {d}, splitting needs at least 4"
        )));
    }
    let around = pg.rotation().around(v);
    let start = around
        .iter()
        .enumerate()
        .min_by_key(|(_, &u)| u)
        .map(|(i, _)| i)
        .unwrap();
    let order: Vec<VertexId> = (0..d).map(|i| around[(start + i) % d]).collect();

    let (mut graph, mut rot) = pg.clone().into_parts();
    let weights: Vec<Weight> = order.iter().map(|&u| graph.weight(v, u).unwrap()).collect();
    graph.remove_vertex(v)?;
    let w = graph.fresh_vertex();
    let w_prime = graph.fresh_vertex();
    for (i, (&u, &wt)) in order.iter().zip(&weights).enumerate() {
        let end = if i < 2 { w } else { w_prime };
        graph.add_weighted_edge(end, u, wt)?;
        rot.replace_neighbor(u, v, end);
    }
    graph.add_weighted_edge(w, w_prime, 0)?;
    let mut rot_w_prime: Vec<VertexId> = order[2..].to_vec();
    rot_w_prime.push(w);
    rot.set(w, vec![order[0], order[1], w_prime]);
    rot.set(w_prime, rot_w_prime);
    rot.remove_vertex(v);
    Ok((PlaneGraph::new(graph, rot)?, SplitMap { w, w_prime, v }))
}

/// Replaces the path `u v w` through the degree-2 vertex `v` by one edge of
/// weight `w(uv) + w(vw)`.
pub fn suppress_degree2_vertex(pg: &PlaneGraph, v: VertexId) -> Result<PlaneGraph> {
    let graph = pg.graph();
    if !graph.contains(v) {
        return Err(Error::MemberNotInGraph(v));
    }
    if graph.degree(v) != 2 {
        return Err(Error::PreconditionViolated(format!(
            "vertex {v} has degree {}, suppression needs 2",
            graph.degree(v)
        )));
    }
    let nb = graph.neighbor_vec(v);
    let (u, w) = (nb[0], nb[1]);
    if graph.has_edge(u, w) {
        return Err(Error::WouldCreateParallelEdge { v, u, w });
    }
    let weight = graph.weight(u, v).unwrap() + graph.weight(v, w).unwrap();
    let (mut graph, mut rot) = pg.clone().into_parts();
    graph.remove_vertex(v)?;
    graph.add_weighted_edge(u, w, weight)?;
    rot.replace_neighbor(u, v, w);
    rot.replace_neighbor(w, v, u);
    rot.remove_vertex(v);
    PlaneGraph::new(graph, rot)
}
