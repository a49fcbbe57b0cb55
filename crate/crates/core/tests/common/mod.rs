#![allow(dead_code)]

use std::collections::BTreeSet;

use fvs_core::graph::{is_connected, Edge, Graph, VertexId, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A simple cycle as its closed vertex sequence (first vertex not repeated).
pub struct Cycle {
    pub vertices: Vec<VertexId>,
}

impl Cycle {
    pub fn edges(&self) -> Vec<Edge> {
        let k = self.vertices.len();
        (0..k)
            .map(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % k]))
            .collect()
    }

    pub fn weight(&self, g: &Graph) -> Weight {
        self.edges()
            .iter()
            .map(|e| g.weight(e.0, e.1).unwrap())
            .sum()
    }
}

/// Every simple cycle exactly once: rooted at its smallest vertex, with the
/// second vertex smaller than the last.
pub fn all_cycles(g: &Graph) -> Vec<Cycle> {
    fn extend(
        g: &Graph,
        path: &mut Vec<VertexId>,
        on: &mut BTreeSet<VertexId>,
        out: &mut Vec<Cycle>,
    ) {
        let root = path[0];
        let last = *path.last().unwrap();
        for u in g.neighbor_vec(last) {
            if u == root && path.len() >= 3 && path[1] < last {
                out.push(Cycle {
                    vertices: path.clone(),
                });
            } else if u > root && !on.contains(&u) {
                path.push(u);
                on.insert(u);
                extend(g, path, on, out);
                on.remove(&u);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in g.vertices() {
        let mut path = vec![s];
        let mut on = BTreeSet::from([s]);
        extend(g, &mut path, &mut on, &mut out);
    }
    out
}

/// Smallest weight over all cycles, by enumeration.
pub fn brute_weighted_girth(g: &Graph) -> Option<Weight> {
    all_cycles(g).iter().map(|c| c.weight(g)).min()
}

fn subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = subsets(&items[1..], k - 1);
    for s in &mut out {
        s.insert(0, items[0]);
    }
    out.extend(subsets(&items[1..], k));
    out
}

/// Vertex connectivity capped at 3, by trying every small separator.
pub fn brute_vertex_connectivity(g: &Graph) -> u8 {
    let vs: Vec<VertexId> = g.vertices().collect();
    if vs.len() <= 1 || !is_connected(g) {
        return 0;
    }
    for k in 1..=3u8 {
        if vs.len() <= k as usize + 1 {
            return k.min(vs.len() as u8 - 1);
        }
        for cut in subsets(&vs, k as usize) {
            if !is_connected(&g.without_vertices(&cut)) {
                return k;
            }
        }
    }
    3
}

/// Edge connectivity capped at 3, by trying every small edge cut.
pub fn brute_edge_connectivity(g: &Graph) -> u8 {
    if g.n() <= 1 || !is_connected(g) {
        return 0;
    }
    let es: Vec<Edge> = g.edges().collect();
    for k in 1..=3u8 {
        for cut in subsets(&es, k as usize) {
            let mut h = g.clone();
            for e in cut {
                h.remove_edge(e.0, e.1).unwrap();
            }
            if !is_connected(&h) {
                return k;
            }
        }
    }
    3
}

/// Random graph on `0..n` keeping each pair with probability `p_percent`%.
pub fn random_graph(n: u32, p_percent: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::with_vertices(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.random_range(0..100) < p_percent {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
        }
    }
    g
}

/// Random graph on `0..n` with maximum degree 3.
pub fn random_subcubic(n: u32, attempts: u32, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::with_vertices(n);
    for _ in 0..attempts {
        let a = VertexId(rng.random_range(0..n));
        let b = VertexId(rng.random_range(0..n));
        if a != b && !g.has_edge(a, b) && g.degree(a) < 3 && g.degree(b) < 3 {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}
