//! Exact minimum feedback vertex sets for small graphs.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

/// Search nodes explored before [`min_fvs_exact`] gives up on optimality.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Largest graph the bitset search accepts.
pub const MAX_ORACLE_N: usize = 128;

/// Largest graph [`min_fvs_naive`] accepts.
pub const MAX_NAIVE_N: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    /// Decycling number, or the best size found if the budget ran out.
    pub phi: usize,
    /// Forest number, `n - phi`.
    pub a: usize,
    pub witness: BTreeSet<VertexId>,
    /// The search stopped early; `phi` is then only an upper bound.
    pub node_budget_hit: bool,
}

type Mask = u128;

fn bit(i: usize) -> Mask {
    1 << i
}

fn members(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

struct Search {
    adj: Vec<Mask>,
    best: Mask,
    best_size: usize,
    nodes: u64,
    budget: u64,
    hit: bool,
}

impl Search {
    /// Repeatedly drops vertices of degree at most 1 in `alive`.
    fn prune(&self, mut alive: Mask) -> Mask {
        loop {
            let low = members(alive)
                .filter(|&v| (self.adj[v] & alive).count_ones() <= 1)
                .fold(0, |acc, v| acc | bit(v));
            if low == 0 {
                return alive;
            }
            alive &= !low;
        }
    }

    /// Shortest cycle of the subgraph induced by `alive`, as a vertex mask.
    fn shortest_cycle(&self, alive: Mask) -> Option<Mask> {
        let n = self.adj.len();
        let mut best: Option<(usize, Mask)> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in members(alive) {
            if best.as_ref().is_some_and(|b| b.0 == 3) {
                break;
            }
            for v in members(alive) {
                dist[v] = usize::MAX;
                parent[v] = usize::MAX;
            }
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if best.as_ref().is_some_and(|b| 2 * dist[u] + 1 >= b.0) {
                    break;
                }
                for v in members(self.adj[u] & alive) {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        if best.as_ref().is_none_or(|b| len < b.0) {
                            let mut mask = 0;
                            let (mut a, mut b) = (u, v);
                            while a != b {
                                mask |= bit(a) | bit(b);
                                if dist[a] >= dist[b] {
                                    a = parent[a];
                                } else {
                                    b = parent[b];
                                }
                            }
                            mask |= bit(a);
                            best = Some((len, mask));
                        }
                    }
                }
            }
        }
        best.map(|b| b.1)
    }

    /// Vertex-disjoint cycles found greedily; each needs its own deletion.
    fn packing_bound(&self, mut alive: Mask) -> usize {
        let mut count = 0;
        loop {
            alive = self.prune(alive);
            match self.shortest_cycle(alive) {
                Some(c) => {
                    count += 1;
                    alive &= !c;
                }
                None => return count,
            }
        }
    }

    /// Greedy max-degree deletion.
    fn greedy(&self, mut alive: Mask) -> Mask {
        let mut chosen = 0;
        loop {
            alive = self.prune(alive);
            if alive == 0 {
                return chosen;
            }
            let v = members(alive)
                .max_by_key(|&v| ((self.adj[v] & alive).count_ones(), std::cmp::Reverse(v)))
                .unwrap();
            chosen |= bit(v);
            alive &= !bit(v);
        }
    }

    /// Adds forced deletions: a free vertex with two kept neighbors in one
    /// kept tree must go. Returns `None` if the kept vertices hold a cycle.
    fn propagate(&self, mut alive: Mask, kept: Mask, mut chosen: Mask) -> Option<(Mask, Mask)> {
        loop {
            let kept_alive = kept & alive;
            // Components of the kept forest.
            let mut comp_of = vec![usize::MAX; self.adj.len()];
            let mut comps = 0;
            for s in members(kept_alive) {
                if comp_of[s] != usize::MAX {
                    continue;
                }
                let mut stack = vec![s];
                comp_of[s] = comps;
                let mut edges2 = 0u32;
                let mut verts = 0u32;
                while let Some(u) = stack.pop() {
                    verts += 1;
                    let nb = self.adj[u] & kept_alive;
                    edges2 += nb.count_ones();
                    for v in members(nb) {
                        if comp_of[v] == usize::MAX {
                            comp_of[v] = comps;
                            stack.push(v);
                        }
                    }
                }
                if edges2 / 2 >= verts {
                    return None;
                }
                comps += 1;
            }
            let mut forced = 0;
            for v in members(alive & !kept) {
                let mut seen = Vec::new();
                for u in members(self.adj[v] & kept_alive) {
                    if seen.contains(&comp_of[u]) {
                        forced |= bit(v);
                        break;
                    }
                    seen.push(comp_of[u]);
                }
            }
            if forced == 0 {
                return Some((alive, chosen));
            }
            chosen |= forced;
            alive &= !forced;
        }
    }

    fn run(&mut self, alive: Mask, kept: Mask, chosen: Mask) {
        if self.hit {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.hit = true;
            return;
        }
        let Some((alive, chosen)) = self.propagate(alive, kept, chosen) else {
            return;
        };
        let size = chosen.count_ones() as usize;
        if size >= self.best_size {
            return;
        }
        let alive = self.prune(alive);
        let Some(cycle) = self.shortest_cycle(alive) else {
            self.best = chosen;
            self.best_size = size;
            return;
        };
        if size + self.packing_bound(alive) >= self.best_size {
            return;
        }
        let free = cycle & !kept;
        let mut now_kept = kept;
        for v in members(free) {
            self.run(alive & !bit(v), now_kept, chosen | bit(v));
            now_kept |= bit(v);
        }
    }
}

/// Minimum feedback vertex set by branch and bound: branch on which vertex
/// of a shortest cycle is deleted first, pruning with a disjoint-cycle
/// packing bound. A node budget turns the answer into an upper bound
/// flagged by `node_budget_hit`.
pub fn min_fvs_exact(g: &Graph, budget: u64) -> Result<OracleResult> {
    let n = g.n();
    if n > MAX_ORACLE_N {
        return Err(Error::OracleTooLarge {
            n,
            max: MAX_ORACLE_N,
        });
    }
    let idx = g.indexed();
    let adj: Vec<Mask> = idx
        .adj
        .iter()
        .map(|nb| nb.iter().fold(0, |acc, &(u, _)| acc | bit(u)))
        .collect();
    let all: Mask = if n == 0 { 0 } else { Mask::MAX >> (128 - n) };
    let mut search = Search {
        adj,
        best: 0,
        best_size: usize::MAX,
        nodes: 0,
        budget,
        hit: false,
    };
    let greedy = search.greedy(all);
    search.best = greedy;
    // One more than the greedy size so an equal-size set is still accepted
    // as the first witness; the greedy set stays as fallback.
    search.best_size = greedy.count_ones() as usize + 1;
    search.run(all, 0, 0);
    if search.best_size > greedy.count_ones() as usize {
        search.best = greedy;
        search.best_size = greedy.count_ones() as usize;
    }
    let witness: BTreeSet<VertexId> = members(search.best).map(|i| idx.ids[i]).collect();
    Ok(OracleResult {
        phi: witness.len(),
        a: n - witness.len(),
        witness,
        node_budget_hit: search.hit,
    })
}

/// [`min_fvs_exact`] with [`DEFAULT_NODE_BUDGET`].
pub fn min_fvs(g: &Graph) -> Result<OracleResult> {
    min_fvs_exact(g, DEFAULT_NODE_BUDGET)
}

/// Decycling number by trying every vertex subset in order of size.
pub fn min_fvs_naive(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > MAX_NAIVE_N {
        return Err(Error::TooLarge {
            n,
            max: MAX_NAIVE_N,
        });
    }
    let idx = g.indexed();
    let edges: Vec<(usize, usize)> = g
        .edges()
        .map(|e| (idx.index[&e.0], idx.index[&e.1]))
        .collect();
    let acyclic_without = |removed: u32| {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(a, b) in &edges {
            if removed & (1 << a) != 0 || removed & (1 << b) != 0 {
                continue;
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    };
    let mut by_size: Vec<u32> = (0..1u32 << n).collect();
    by_size.sort_by_key(|s| s.count_ones());
    Ok(by_size
        .into_iter()
        .find(|&s| acyclic_without(s))
        .map_or(n, |s| s.count_ones() as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_fvs;

    fn k(n: u32) -> Graph {
        let mut e = vec![];
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        Graph::from_edges(&e).unwrap()
    }

    #[test]
    fn complete_graphs() {
        for n in 3..=7 {
            let r = min_fvs(&k(n)).unwrap();
            assert_eq!(r.phi, n as usize - 2);
            assert_eq!(r.a, 2);
            assert!(validate_fvs(&k(n), &r.witness).unwrap());
            assert!(!r.node_budget_hit);
        }
        assert_eq!(min_fvs_naive(&k(4)).unwrap(), 2);
    }

    #[test]
    fn forests_and_empty() {
        let r = min_fvs(&Graph::new()).unwrap();
        assert_eq!((r.phi, r.a), (0, 0));
        let p = Graph::from_edges(&[(0, 1), (1, 2)]).unwrap();
        assert_eq!(min_fvs(&p).unwrap().phi, 0);
        assert_eq!(min_fvs_naive(&p).unwrap(), 0);
    }

    #[test]
    fn naive_rejects_large() {
        let g = Graph::with_vertices(13);
        assert!(matches!(min_fvs_naive(&g), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn tiny_budget_flags_result() {
        let r = min_fvs_exact(&k(7), 1).unwrap();
        assert!(validate_fvs(&k(7), &r.witness).unwrap());
        assert!(r.node_budget_hit || r.phi == 5);
    }
}
