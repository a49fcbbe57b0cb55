use std::collections::{BTreeSet, HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Edge, Graph, Indexed, VertexId};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CutKind {
    Vertex,
    Edge,
}

/// A separating set together with the two vertex sides it separates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutStructure {
    pub kind: CutKind,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Edge>,
    pub side1: BTreeSet<VertexId>,
    pub side2: BTreeSet<VertexId>,
}

/// Vertex and edge connectivity, each capped at 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connectivity {
    pub vertex: u8,
    pub edge: u8,
}

struct Lowpoint {
    articulation: Vec<bool>,
    bridges: Vec<(usize, usize)>,
    blocks: Vec<Vec<(usize, usize)>>,
}

/// Iterative Hopcroft-Tarjan lowpoint DFS over every component.
fn lowpoint(idx: &Indexed, skip: Option<usize>) -> Lowpoint {
    let n = idx.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![usize::MAX; n];
    let mut articulation = vec![false; n];
    let mut bridges = Vec::new();
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX || Some(root) == skip {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, parent, i) = *top;
            if i < idx.adj[v].len() {
                top.2 += 1;
                let u = idx.adj[v][i].0;
                if u == parent || Some(u) == skip {
                    continue;
                }
                if disc[u] == usize::MAX {
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    edge_stack.push((v, u));
                    stack.push((u, v, 0));
                } else if disc[u] < disc[v] {
                    low[v] = low[v].min(disc[u]);
                    edge_stack.push((v, u));
                }
            } else {
                stack.pop();
                if parent == usize::MAX {
                    continue;
                }
                low[parent] = low[parent].min(low[v]);
                if low[v] > disc[parent] {
                    bridges.push((parent, v));
                }
                if low[v] >= disc[parent] {
                    if parent == root {
                        root_children += 1;
                    } else {
                        articulation[parent] = true;
                    }
                    let mut block = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        block.push(e);
                        if e == (parent, v) {
                            break;
                        }
                    }
                    blocks.push(block);
                }
            }
        }
        if root_children >= 2 {
            articulation[root] = true;
        }
    }
    Lowpoint {
        articulation,
        bridges,
        blocks,
    }
}

fn bfs_component(idx: &Indexed, start: usize, blocked: impl Fn(usize, usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; idx.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &idx.adj[u] {
            if !seen[v] && !blocked(u, v) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Connected components, each sorted, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<Vec<VertexId>> {
    let idx = g.indexed();
    let mut comp = vec![usize::MAX; idx.len()];
    let mut out = Vec::new();
    for s in 0..idx.len() {
        if comp[s] != usize::MAX {
            continue;
        }
        let seen = bfs_component(&idx, s, |_, _| false);
        let members: Vec<VertexId> = (0..idx.len())
            .filter(|&i| seen[i])
            .inspect(|&i| comp[i] = out.len())
            .map(|i| idx.ids[i])
            .collect();
        out.push(members);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    if g.is_empty() {
        return true;
    }
    let idx = g.indexed();
    bfs_component(&idx, 0, |_, _| false).iter().all(|&s| s)
}

pub fn cut_vertices(g: &Graph) -> Vec<VertexId> {
    let idx = g.indexed();
    let lp = lowpoint(&idx, None);
    (0..idx.len())
        .filter(|&i| lp.articulation[i])
        .map(|i| idx.ids[i])
        .collect()
}

pub fn bridges(g: &Graph) -> Vec<Edge> {
    let idx = g.indexed();
    let mut out: Vec<Edge> = lowpoint(&idx, None)
        .bridges
        .into_iter()
        .map(|(a, b)| Edge::new(idx.ids[a], idx.ids[b]))
        .collect();
    out.sort();
    out
}

/// Edge sets of the blocks (maximal 2-connected subgraphs and bridges).
/// Isolated vertices belong to no block. Output is sorted.
pub fn biconnected_components(g: &Graph) -> Vec<Vec<Edge>> {
    let idx = g.indexed();
    let mut blocks: Vec<Vec<Edge>> = lowpoint(&idx, None)
        .blocks
        .into_iter()
        .map(|b| {
            let mut es: Vec<Edge> = b
                .into_iter()
                .map(|(a, c)| Edge::new(idx.ids[a], idx.ids[c]))
                .collect();
            es.sort();
            es
        })
        .collect();
    blocks.sort();
    blocks
}

/// 2-connected in the strict sense: more than two vertices, connected, no
/// cut vertex.
pub fn is_two_connected(g: &Graph) -> bool {
    if g.n() <= 2 || !is_connected(g) {
        return false;
    }
    let idx = g.indexed();
    !lowpoint(&idx, None).articulation.iter().any(|&a| a)
}

pub fn connectivity_le3(g: &Graph) -> Connectivity {
    let n = g.n();
    if n <= 1 || !is_connected(g) {
        return Connectivity { vertex: 0, edge: 0 };
    }
    let idx = g.indexed();
    let lp = lowpoint(&idx, None);

    let vertex = if n <= 2 || lp.articulation.iter().any(|&a| a) {
        1
    } else if n <= 3 {
        2
    } else {
        let three = (0..n).all(|skip| {
            let sub = lowpoint(&idx, Some(skip));
            // Removing `skip` must leave one component without cut vertices.
            let reached = bfs_component(&idx, usize::from(skip == 0), |_, v| v == skip);
            reached.iter().filter(|&&r| r).count() == n - 1 && !sub.articulation.iter().any(|&a| a)
        });
        if three {
            3
        } else {
            2
        }
    };

    let edge = if !lp.bridges.is_empty() {
        1
    } else {
        let edges: Vec<(usize, usize)> = g
            .edges()
            .map(|e| (idx.index[&e.0], idx.index[&e.1]))
            .collect();
        let has_two_cut = edges.iter().any(|&(a, b)| {
            let mut reduced = idx.clone();
            reduced.adj[a].retain(|&(x, _)| x != b);
            reduced.adj[b].retain(|&(x, _)| x != a);
            !lowpoint(&reduced, None).bridges.is_empty()
        });
        if has_two_cut {
            2
        } else {
            3
        }
    };
    Connectivity { vertex, edge }
}

/// All edge cut-sets of size exactly two in a 2-edge-connected graph.
///
/// Candidates come from random cycle-space labels: two edges form a cut iff
/// the XOR labels of the non-tree edges covering them coincide. Every
/// candidate is confirmed by a traversal, so the result is exact.
pub fn two_edge_cuts(g: &Graph) -> Result<Vec<CutStructure>> {
    if g.n() < 2 || !is_connected(g) {
        return Err(Error::PreconditionViolated(
            "graph must be connected with at least two vertices".into(),
        ));
    }
    if !bridges(g).is_empty() {
        return Err(Error::PreconditionViolated(
            "graph must be 2-edge-connected".into(),
        ));
    }
    let idx = g.indexed();
    let n = idx.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0002_ed9e_c075);

    // DFS tree.
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for &(u, _) in &idx.adj[v] {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                stack.push(u);
            }
        }
    }
    let mut label: HashMap<(usize, usize), u64> = HashMap::new();
    let mut acc = vec![0u64; n];
    for v in 0..n {
        for &(u, _) in &idx.adj[v] {
            if v < u && parent[u] != v && parent[v] != u {
                let x: u64 = rng.random();
                label.insert((v, u), x);
                acc[v] ^= x;
                acc[u] ^= x;
            }
        }
    }
    for &v in order.iter().rev() {
        let p = parent[v];
        if p != usize::MAX {
            label.insert((p.min(v), p.max(v)), acc[v]);
            acc[p] ^= acc[v];
        }
    }
    let mut classes: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for (e, x) in label {
        classes.entry(x).or_default().push(e);
    }
    let mut groups: Vec<Vec<(usize, usize)>> =
        classes.into_values().filter(|c| c.len() >= 2).collect();
    for grp in &mut groups {
        grp.sort();
    }
    groups.sort();

    let mut cuts = Vec::new();
    for grp in groups {
        for i in 0..grp.len() {
            for j in i + 1..grp.len() {
                let (e, f) = (grp[i], grp[j]);
                let blocked = |a: usize, b: usize| {
                    let k = (a.min(b), a.max(b));
                    k == e || k == f
                };
                let reach = bfs_component(&idx, e.0, blocked);
                if reach.iter().all(|&r| r) {
                    continue;
                }
                let side1: BTreeSet<VertexId> =
                    (0..n).filter(|&x| reach[x]).map(|x| idx.ids[x]).collect();
                let side2: BTreeSet<VertexId> =
                    (0..n).filter(|&x| !reach[x]).map(|x| idx.ids[x]).collect();
                let mut edges = vec![
                    Edge::new(idx.ids[e.0], idx.ids[e.1]),
                    Edge::new(idx.ids[f.0], idx.ids[f.1]),
                ];
                edges.sort();
                cuts.push(CutStructure {
                    kind: CutKind::Edge,
                    vertices: Vec::new(),
                    edges,
                    side1,
                    side2,
                });
            }
        }
    }
    Ok(cuts)
}

/// The 2-edge cut-set whose smaller side is as small as possible; that side
/// is returned as `side1`. Ties go to the lexicographically smallest side.
/// `None` when the graph is 3-edge-connected.
pub fn min_side_two_edge_cut(g: &Graph) -> Result<Option<CutStructure>> {
    let mut best: Option<(usize, Vec<VertexId>, CutStructure)> = None;
    for mut cut in two_edge_cuts(g)? {
        let a: Vec<VertexId> = cut.side1.iter().copied().collect();
        let b: Vec<VertexId> = cut.side2.iter().copied().collect();
        let key_a = (a.len(), a);
        let key_b = (b.len(), b);
        let key = if key_b < key_a {
            std::mem::swap(&mut cut.side1, &mut cut.side2);
            key_b
        } else {
            key_a
        };
        if best
            .as_ref()
            .is_none_or(|(len, side, _)| key < (*len, side.clone()))
        {
            best = Some((key.0, key.1, cut));
        }
    }
    Ok(best.map(|(_, _, c)| c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: u32) -> VertexId {
        VertexId(x)
    }

    fn cycle(n: u32) -> Graph {
        Graph::from_edges(&(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn cube() -> Graph {
        Graph::from_edges(&[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (0, 4),
            (1, 5),
            (2, 6),
            (3, 7),
        ])
        .unwrap()
    }

    #[test]
    fn connectivity_examples() {
        let p3 = Graph::from_edges(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(connectivity_le3(&p3), Connectivity { vertex: 1, edge: 1 });
        assert_eq!(
            connectivity_le3(&cycle(5)),
            Connectivity { vertex: 2, edge: 2 }
        );
        assert_eq!(
            connectivity_le3(&cube()),
            Connectivity { vertex: 3, edge: 3 }
        );
        let mut two = Graph::with_vertices(2);
        assert_eq!(connectivity_le3(&two), Connectivity { vertex: 0, edge: 0 });
        two.add_edge(v(0), v(1)).unwrap();
        assert_eq!(connectivity_le3(&two), Connectivity { vertex: 1, edge: 1 });
    }

    #[test]
    fn cut_vertex_examples() {
        let bowtie = Graph::from_edges(&[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(cut_vertices(&bowtie), vec![v(2)]);
        assert!(cut_vertices(&cube()).is_empty());
        let p3 = Graph::from_edges(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(cut_vertices(&p3), vec![v(1)]);
        assert_eq!(biconnected_components(&bowtie).len(), 2);
    }

    #[test]
    fn two_edge_cut_examples() {
        let prism = Graph::from_edges(&[
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
        .unwrap();
        assert!(min_side_two_edge_cut(&prism).unwrap().is_none());

        let c6 = cycle(6);
        let cut = min_side_two_edge_cut(&c6).unwrap().unwrap();
        assert_eq!(cut.side1.len(), 1);
        assert_eq!(cut.side1, BTreeSet::from([v(0)]));

        // Two 4-cycles joined by two disjoint edges.
        let g = Graph::from_edges(&[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 0),
            (4, 5),
            (5, 6),
            (6, 7),
            (7, 4),
            (0, 4),
            (1, 5),
        ])
        .unwrap();
        let joining = [Edge(v(0), v(4)), Edge(v(1), v(5))];
        let cuts = two_edge_cuts(&g).unwrap();
        let join = cuts.iter().find(|c| c.edges == joining).unwrap();
        assert_eq!(join.side1.len().min(join.side2.len()), 4);
        // The degree-2 corners give strictly smaller sides.
        let cut = min_side_two_edge_cut(&g).unwrap().unwrap();
        assert_eq!(cut.side1, BTreeSet::from([v(2)]));
    }

    #[test]
    fn two_edge_cut_rejects_bridges() {
        let p3 = Graph::from_edges(&[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            min_side_two_edge_cut(&p3),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
