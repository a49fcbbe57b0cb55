//! Named graphs, generators and the graph file format.

mod io;

pub use io::{format_graph, from_json, parse_graph, read_graph, to_json, write_graph};

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embed::{embed, faces_of, PlaneGraph, RotationSystem};
use crate::error::{Error, Result};
use crate::graph::{is_two_connected, weighted_girth, Girth, Graph, VertexId, Weight};

/// A graph with optional embedding and recorded facts about it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub name: Option<String>,
    pub graph: Graph,
    pub rotation: Option<RotationSystem>,
    pub girth: Option<Girth>,
    pub phi: Option<usize>,
}

impl Instance {
    pub fn new(graph: Graph) -> Self {
        Instance {
            name: None,
            graph,
            rotation: None,
            girth: None,
            phi: None,
        }
    }

    /// Plane graph from the stored rotation, or from [`embed`] when absent.
    pub fn plane(&self) -> Result<PlaneGraph> {
        match &self.rotation {
            Some(rot) => PlaneGraph::new(self.graph.clone(), rot.clone()),
            None => PlaneGraph::embedded(self.graph.clone()),
        }
    }
}

/// Names accepted by [`make_named`]; `c<k>` and `chain<k>` take a size.
pub const NAMED: &[&str] = &[
    "k4",
    "cube",
    "dodecahedron",
    "petersen",
    "prism",
    "k33",
    "c<k>",
    "chain<k>",
];

fn lcf(n: u32, jumps: &[i64]) -> Graph {
    let mut g = cycle(n);
    for i in 0..n {
        let j = jumps[i as usize % jumps.len()];
        let t = (i as i64 + j).rem_euclid(n as i64) as u32;
        let (a, b) = (VertexId(i), VertexId(t));
        if !g.has_edge(a, b) {
            g.add_edge(a, b).expect("LCF chords join existing vertices");
        }
    }
    g
}

/// Cycle on vertices `0..k`.
pub fn cycle(k: u32) -> Graph {
    let edges: Vec<(u32, u32)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::from_edges(&edges).expect("k >= 3 gives a simple cycle")
}

pub fn k4() -> Graph {
    Graph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn cube() -> Graph {
    lcf(8, &[3, -3])
}

pub fn dodecahedron() -> Graph {
    lcf(20, &[10, 7, 4, -4, -7, 10, -4, 7, -7, 4])
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(&e).unwrap()
}

pub fn prism() -> Graph {
    Graph::from_edges(&[
        (0, 1),
        (1, 2),
        (2, 0),
        (3, 4),
        (4, 5),
        (5, 3),
        (0, 3),
        (1, 4),
        (2, 5),
    ])
    .unwrap()
}

pub fn k33() -> Graph {
    let mut e = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            e.push((a, b));
        }
    }
    Graph::from_edges(&e).unwrap()
}

/// Triangulated ladder with `k` blocks of three vertices: the square of a
/// path on `3k` vertices, listed zigzag between the two rails. Its forest
/// number is `2n/3` and its decycling number `k`.
pub fn outerplanar_chain(k: u32) -> Graph {
    let n = 3 * k;
    let mut e = Vec::new();
    for i in 0..n {
        if i + 1 < n {
            e.push((i, i + 1));
        }
        if i + 2 < n {
            e.push((i, i + 2));
        }
    }
    let mut g = Graph::from_edges(&e).unwrap();
    for v in 0..n {
        g.ensure_vertex(VertexId(v));
    }
    g
}

/// `k` disjoint cycles of length `g`.
pub fn disjoint_cycles(k: u32, g: u32) -> Result<Graph> {
    if k < 1 || g < 3 {
        return Err(Error::PreconditionViolated(format!(
            "need k >= 1 and g >= 3, got k = {k}, g = {g}"
        )));
    }
    let mut e = Vec::new();
    for c in 0..k {
        for i in 0..g {
            e.push((c * g + i, c * g + (i + 1) % g));
        }
    }
    Graph::from_edges(&e)
}

fn parse_suffix(name: &str, prefix: &str) -> Option<u32> {
    name.strip_prefix(prefix)?.parse().ok()
}

/// Named instance with its embedding (when planar) and known girth and
/// decycling number.
pub fn make_named(name: &str) -> Result<Instance> {
    let lower = name.to_ascii_lowercase();
    let (graph, girth, phi) = match lower.as_str() {
        "k4" => (k4(), 3, 2),
        "cube" => (cube(), 4, 3),
        "dodecahedron" => (dodecahedron(), 5, 6),
        "petersen" => (petersen(), 5, 3),
        "prism" => (prism(), 3, 2),
        "k33" => (k33(), 4, 2),
        _ => {
            if let Some(k) = parse_suffix(&lower, "chain").filter(|&k| k >= 1) {
                (outerplanar_chain(k), 3, k as usize)
            } else if let Some(k) = parse_suffix(&lower, "c").filter(|&k| k >= 3) {
                (cycle(k), k as u64, 1)
            } else {
                return Err(Error::UnknownName(name.to_string()));
            }
        }
    };
    let rotation = match embed(&graph) {
        Ok(r) => Some(r),
        Err(Error::NonPlanar) => None,
        Err(e) => return Err(e),
    };
    Ok(Instance {
        name: Some(lower),
        graph,
        rotation,
        girth: Some(Girth::Finite(girth)),
        phi: Some(phi),
    })
}

/// Replaces every vertex of a cubic graph by a triangle; the corner
/// `3i + j` of the `i`-th vertex takes over its `j`-th neighbor.
pub fn triangle_replace(g: &Graph) -> Result<Graph> {
    if !g.is_cubic() {
        return Err(Error::PreconditionViolated(
            "triangle replacement needs a 3-regular graph".into(),
        ));
    }
    let ids: Vec<VertexId> = g.vertices().collect();
    let index = |v: VertexId| ids.binary_search(&v).unwrap() as u32;
    let corner = |v: VertexId, u: VertexId| {
        let j = g.neighbors(v).position(|x| x == u).unwrap() as u32;
        VertexId(3 * index(v) + j)
    };
    let mut h = Graph::with_vertices(3 * ids.len() as u32);
    for (i, _) in ids.iter().enumerate() {
        let base = 3 * i as u32;
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            h.add_edge(VertexId(base + a), VertexId(base + b))?;
        }
    }
    for e in g.edges() {
        h.add_edge(corner(e.0, e.1), corner(e.1, e.0))?;
    }
    Ok(h)
}

const CUBIC_RETRIES: usize = 10_000;

/// Random simple 2-connected cubic graph on `0..n` from the pairing model,
/// rejecting loops, multi-edges and graphs that are not 2-connected.
pub fn random_cubic_2connected(n: u32, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::PreconditionViolated(format!(
            "cubic graphs need an even n >= 4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<u32> = (0..3 * n).map(|p| p / 3).collect();
    'attempt: for _ in 0..CUBIC_RETRIES {
        points.shuffle(&mut rng);
        let mut g = Graph::with_vertices(n);
        for pair in points.chunks(2) {
            let (a, b) = (VertexId(pair[0]), VertexId(pair[1]));
            if a == b || g.has_edge(a, b) {
                continue 'attempt;
            }
            g.add_edge(a, b)?;
        }
        if is_two_connected(&g) {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed(format!(
        "no 2-connected cubic graph on {n} vertices after {CUBIC_RETRIES} attempts"
    )))
}

/// Random plane graph with girth at least `g`.
///
/// A 2-connected cubic plane graph is grown from K4 by joining new vertices
/// placed on two edges of a common face; then every edge is subdivided
/// `ceil(g/3) - 1` times, which scales every cycle length by that factor
/// plus one.
pub fn random_planar_girth(n_target: u32, g: u32, seed: u64) -> Result<(Graph, RotationSystem)> {
    if g < 3 {
        return Err(Error::PreconditionViolated(format!(
            "g must be at least 3, got {g}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = k4();
    let mut rot = embed(&graph)?;
    while (graph.n() as u32) < n_target {
        let (faces, _) = faces_of(&graph, &rot)?;
        let face = &faces[rng.random_range(0..faces.len())];
        let k = face.darts.len();
        let i = rng.random_range(0..k);
        let j = (i + 1 + rng.random_range(0..k - 1)) % k;
        let (p, q) = face.darts[i];
        let (r, s) = face.darts[j];
        let a = graph.fresh_vertex();
        let b = graph.fresh_vertex();
        for (x, y, mid) in [(p, q, a), (r, s, b)] {
            graph.remove_edge(x, y)?;
            graph.add_edge(x, mid)?;
            graph.add_edge(mid, y)?;
            rot.replace_neighbor(x, y, mid);
            rot.replace_neighbor(y, x, mid);
        }
        graph.add_edge(a, b)?;
        rot.set(a, vec![p, b, q]);
        rot.set(b, vec![r, a, s]);
    }
    let t = g.div_ceil(3) - 1;
    if t > 0 {
        for e in graph.clone().edges() {
            let mut prev = e.0;
            let mut chain = Vec::new();
            graph.remove_edge(e.0, e.1)?;
            for _ in 0..t {
                let x = graph.fresh_vertex();
                graph.add_edge(prev, x)?;
                chain.push(x);
                prev = x;
            }
            graph.add_edge(prev, e.1)?;
            rot.replace_neighbor(e.0, e.1, chain[0]);
            rot.replace_neighbor(e.1, e.0, *chain.last().unwrap());
            for (idx, &x) in chain.iter().enumerate() {
                let before = if idx == 0 { e.0 } else { chain[idx - 1] };
                let after = chain.get(idx + 1).copied().unwrap_or(e.1);
                rot.set(x, vec![before, after]);
            }
        }
    }
    faces_of(&graph, &rot)?;
    Ok((graph, rot))
}

/// Random plane graph on `n` vertices with positive weights scaled so that
/// every cycle weighs at least `g`.
///
/// A random stacked triangulation loses each edge with probability
/// `drop_percent / 100`; weights are drawn from `1..=max_weight` and then
/// multiplied by the smallest factor that lifts the weighted girth to `g`.
pub fn random_plane_weighted(
    n: u32,
    g: Weight,
    max_weight: Weight,
    drop_percent: u32,
    seed: u64,
) -> Result<PlaneGraph> {
    if n < 3 || max_weight == 0 {
        return Err(Error::PreconditionViolated(
            "need n >= 3 and a positive weight range".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: BTreeSet<(u32, u32)> = [(0, 1), (1, 2), (0, 2)].into();
    let mut triangles = vec![[0u32, 1, 2], [0, 1, 2]];
    for x in 3..n {
        let t = triangles.swap_remove(rng.random_range(0..triangles.len()));
        for &c in &t {
            edges.insert((c.min(x), c.max(x)));
        }
        triangles.push([t[0], t[1], x]);
        triangles.push([t[1], t[2], x]);
        triangles.push([t[0], t[2], x]);
    }
    let mut graph = Graph::with_vertices(n);
    for (a, b) in edges {
        if rng.random_range(0..100) < drop_percent {
            continue;
        }
        graph.add_weighted_edge(VertexId(a), VertexId(b), rng.random_range(1..=max_weight))?;
    }
    if let Girth::Finite(wg) = weighted_girth(&graph) {
        if wg < g {
            let factor = g.div_ceil(wg);
            for (e, w) in graph.clone().weighted_edges() {
                graph.set_weight(e.0, e.1, w * factor)?;
            }
        }
    }
    PlaneGraph::embedded(graph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{girth, is_two_connected};

    #[test]
    fn named_instances_match_their_metadata() {
        for name in [
            "k4",
            "cube",
            "dodecahedron",
            "petersen",
            "prism",
            "k33",
            "c7",
            "chain3",
        ] {
            let inst = make_named(name).unwrap();
            assert_eq!(Some(girth(&inst.graph)), inst.girth, "{name}");
        }
        let d = make_named("dodecahedron").unwrap();
        assert_eq!((d.graph.n(), d.graph.m()), (20, 30));
        assert!(d.graph.is_cubic());
        assert!(make_named("k33").unwrap().rotation.is_none());
        assert!(make_named("petersen").unwrap().rotation.is_none());
        assert!(matches!(make_named("k5"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn triangle_replacement_shape() {
        let h = triangle_replace(&k4()).unwrap();
        assert_eq!((h.n(), h.m()), (12, 18));
        assert!(h.is_cubic());
        let p = triangle_replace(&prism()).unwrap();
        assert!(p.is_cubic() && is_two_connected(&p));
        assert!(triangle_replace(&cycle(5)).is_err());
    }

    #[test]
    fn random_cubic_is_deterministic() {
        assert_eq!(random_cubic_2connected(4, 9).unwrap(), k4());
        let a = random_cubic_2connected(100, 1).unwrap();
        assert!(a.is_cubic() && is_two_connected(&a));
        assert_eq!(a, random_cubic_2connected(100, 1).unwrap());
        assert!(random_cubic_2connected(3, 1).is_err());
    }

    #[test]
    fn random_planar_girth_meets_target() {
        for (g, seed) in [(3, 1), (5, 2), (9, 3)] {
            let (graph, rot) = random_planar_girth(20, g, seed).unwrap();
            assert!(girth(&graph) >= Girth::Finite(g as u64));
            assert!(faces_of(&graph, &rot).is_ok());
        }
    }
}
