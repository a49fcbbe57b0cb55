use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use super::{faces_of, RotationSystem};
use crate::error::{Error, Result};
use crate::graph::{biconnected_components, Edge, Graph, VertexId};

/// Planar embedding of `g`, or [`Error::NonPlanar`].
///
/// Each block is embedded by incremental path insertion (fragments relative
/// to the embedded part are placed into a face containing all their
/// attachments, forced fragments first); block rotations are then
/// concatenated at cut vertices.
pub fn embed(g: &Graph) -> Result<RotationSystem> {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return Err(Error::NonPlanar);
    }
    let mut rot: BTreeMap<VertexId, Vec<VertexId>> =
        g.vertices().map(|v| (v, Vec::new())).collect();
    for block in biconnected_components(g) {
        if block.len() == 1 {
            let e = block[0];
            rot.get_mut(&e.0).unwrap().push(e.1);
            rot.get_mut(&e.1).unwrap().push(e.0);
            continue;
        }
        for (v, order) in embed_block(&block)? {
            rot.get_mut(&v).unwrap().extend(order);
        }
    }
    let rot = RotationSystem::from_lists(rot);
    match faces_of(g, &rot) {
        Ok(_) => Ok(rot),
        Err(Error::NonPlanarRotation(msg)) => Err(Error::InternalInvariantBroken(format!(
            "embedding produced a non-planar rotation: {msg}"
        ))),
        Err(e) => Err(e),
    }
}

struct Fragment {
    attachments: BTreeSet<VertexId>,
    /// A path through the fragment between two distinct attachments.
    path: Vec<VertexId>,
}

/// Embeds a 2-connected graph given by its edges. Returns the rotation at
/// each vertex of the block.
fn embed_block(edges: &[Edge]) -> Result<Vec<(VertexId, Vec<VertexId>)>> {
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for e in edges {
        adj.entry(e.0).or_default().insert(e.1);
        adj.entry(e.1).or_default().insert(e.0);
    }
    let nv = adj.len();
    if nv >= 3 && edges.len() > 3 * nv - 6 {
        return Err(Error::NonPlanar);
    }

    // Initial cycle through the smallest edge.
    let first = edges[0];
    let path = bfs_path(
        &adj,
        first.0,
        |v| v == first.1,
        |a, b| Edge::new(a, b) != first,
    )
    .ok_or_else(|| Error::InternalInvariantBroken("block edge on no cycle".into()))?;
    let mut in_h: HashSet<VertexId> = path.iter().copied().collect();
    let mut h_edges: HashSet<Edge> = path.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
    h_edges.insert(first);
    let mut rev = path.clone();
    rev.reverse();
    let mut faces: Vec<Vec<VertexId>> = vec![path, rev];

    while h_edges.len() < edges.len() {
        let fragments = fragments(&adj, edges, &in_h, &h_edges);
        let face_sets: Vec<HashSet<VertexId>> =
            faces.iter().map(|f| f.iter().copied().collect()).collect();
        let mut chosen: Option<(usize, usize)> = None;
        for (i, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| face_sets[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return Err(Error::NonPlanar),
                1 => {
                    chosen = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if chosen.is_none() {
                        chosen = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_id) = chosen.expect("unembedded edges imply a fragment");
        let p = &fragments[fi].path;
        for w in p.windows(2) {
            h_edges.insert(Edge::new(w[0], w[1]));
        }
        in_h.extend(p.iter().copied());
        let (a, b) = split_face(&faces[face_id], p);
        faces[face_id] = a;
        faces.push(b);
    }

    // Rotation from faces: a walk u -> v -> w puts w right after u around v.
    let mut succ: HashMap<(VertexId, VertexId), VertexId> = HashMap::new();
    for f in &faces {
        let k = f.len();
        for i in 0..k {
            let (u, v, w) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            succ.insert((v, u), w);
        }
    }
    let mut out = Vec::with_capacity(nv);
    for (&v, nb) in &adj {
        let start = *nb.iter().next().unwrap();
        let mut order = vec![start];
        let mut cur = succ[&(v, start)];
        while cur != start {
            order.push(cur);
            cur = succ[&(v, cur)];
            if order.len() > nb.len() {
                return Err(Error::InternalInvariantBroken(format!(
                    "rotation at {v} does not close"
                )));
            }
        }
        if order.len() != nb.len() {
            return Err(Error::InternalInvariantBroken(format!(
                "rotation at {v} misses neighbors"
            )));
        }
        out.push((v, order));
    }
    Ok(out)
}

/// Splits face `f` (a vertex cycle) along `path`, whose two ends lie on `f`.
fn split_face(f: &[VertexId], path: &[VertexId]) -> (Vec<VertexId>, Vec<VertexId>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let ia = f.iter().position(|&x| x == a).unwrap();
    let k = f.len();
    let rotated: Vec<VertexId> = (0..k).map(|i| f[(ia + i) % k]).collect();
    let ib = rotated.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];
    // [a, X, b] + reversed inner
    let mut f1: Vec<VertexId> = rotated[..=ib].to_vec();
    f1.extend(inner.iter().rev());
    // [b, Y, a] + inner
    let mut f2: Vec<VertexId> = rotated[ib..].to_vec();
    f2.push(a);
    f2.extend(inner.iter());
    (f1, f2)
}

fn fragments(
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    edges: &[Edge],
    in_h: &HashSet<VertexId>,
    h_edges: &HashSet<Edge>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for e in edges {
        if in_h.contains(&e.0) && in_h.contains(&e.1) && !h_edges.contains(e) {
            out.push(Fragment {
                attachments: [e.0, e.1].into(),
                path: vec![e.0, e.1],
            });
        }
    }
    let mut seen: HashSet<VertexId> = HashSet::new();
    for &s in adj.keys() {
        if in_h.contains(&s) || seen.contains(&s) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen.insert(s);
        while let Some(u) = queue.pop_front() {
            comp.insert(u);
            for &x in &adj[&u] {
                if in_h.contains(&x) {
                    attachments.insert(x);
                } else if seen.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        let a = *attachments
            .iter()
            .next()
            .expect("blocks have no pendant parts");
        // From `a`, walk through the fragment's interior to another attachment.
        let path = bfs_path(
            adj,
            a,
            |v| v != a && attachments.contains(&v),
            |x, y| {
                // Leave `a` only into the component; never step between two
                // attachments directly.
                (x == a && comp.contains(&y))
                    || (comp.contains(&x) && (comp.contains(&y) || y != a))
            },
        )
        .expect("fragment of a block has two attachments");
        out.push(Fragment { attachments, path });
    }
    out
}

/// Shortest path from `s` to the first vertex satisfying `goal`, using only
/// steps `x -> y` allowed by `step`.
fn bfs_path(
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    s: VertexId,
    goal: impl Fn(VertexId) -> bool,
    step: impl Fn(VertexId, VertexId) -> bool,
) -> Option<Vec<VertexId>> {
    let mut prev: HashMap<VertexId, VertexId> = HashMap::new();
    let mut queue = VecDeque::from([s]);
    let mut seen: HashSet<VertexId> = HashSet::from([s]);
    while let Some(u) = queue.pop_front() {
        for &x in &adj[&u] {
            if seen.contains(&x) || !step(u, x) {
                continue;
            }
            seen.insert(x);
            prev.insert(x, u);
            if goal(x) {
                let mut p = vec![x];
                let mut c = x;
                while c != s {
                    c = prev[&c];
                    p.push(c);
                }
                p.reverse();
                return Some(p);
            }
            queue.push_back(x);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::PlaneGraph;

    fn planar_ok(g: &Graph) -> PlaneGraph {
        let rot = embed(g).unwrap();
        PlaneGraph::new(g.clone(), rot).unwrap()
    }

    #[test]
    fn k4_gets_four_faces() {
        let g = Graph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(planar_ok(&g).faces().len(), 4);
    }

    #[test]
    fn k33_and_k5_are_rejected() {
        let mut k33 = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                k33.push((a, b));
            }
        }
        assert!(matches!(
            embed(&Graph::from_edges(&k33).unwrap()),
            Err(Error::NonPlanar)
        ));
        let mut k5 = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                k5.push((a, b));
            }
        }
        assert!(matches!(
            embed(&Graph::from_edges(&k5).unwrap()),
            Err(Error::NonPlanar)
        ));
    }

    #[test]
    fn subdivided_k33_is_rejected() {
        // K3,3 with every edge subdivided once: sparse, so only the search
        // can reject it.
        let mut edges = Vec::new();
        let mut next = 6;
        for a in 0..3 {
            for b in 3..6 {
                edges.push((a, next));
                edges.push((next, b));
                next += 1;
            }
        }
        assert!(matches!(
            embed(&Graph::from_edges(&edges).unwrap()),
            Err(Error::NonPlanar)
        ));
    }

    #[test]
    fn tree_has_one_face() {
        let g = Graph::from_edges(&[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(planar_ok(&g).faces().len(), 1);
    }

    #[test]
    fn blocks_glue_at_cut_vertices() {
        // Two K4s sharing vertex 0, plus a pendant path and an isolated vertex.
        let mut g = Graph::from_edges(&[
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            (0, 4),
            (0, 5),
            (0, 6),
            (4, 5),
            (4, 6),
            (5, 6),
            (6, 7),
        ])
        .unwrap();
        g.add_vertex(VertexId(9)).unwrap();
        let pg = planar_ok(&g);
        // 3 + 3 inner triangles plus one outer face.
        assert_eq!(pg.faces().len(), 7);
        assert!(pg.euler_holds());
    }

    #[test]
    fn wheel_and_grid() {
        let mut w = vec![];
        for i in 1..=6 {
            w.push((0, i));
            w.push((i, i % 6 + 1));
        }
        let pg = planar_ok(&Graph::from_edges(&w).unwrap());
        assert_eq!(pg.faces().len(), 7);
        let mut grid = vec![];
        for r in 0..4u32 {
            for c in 0..4u32 {
                let v = r * 4 + c;
                if c < 3 {
                    grid.push((v, v + 1));
                }
                if r < 3 {
                    grid.push((v, v + 4));
                }
            }
        }
        let pg = planar_ok(&Graph::from_edges(&grid).unwrap());
        assert_eq!(pg.faces().len(), 10);
    }
}
