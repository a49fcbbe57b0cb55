use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet, VecDeque};
use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::{Graph, VertexId, Weight};
use crate::error::{Error, Result};

/// Length (or weight) of a shortest cycle. Forests have infinite girth.
/// Serialized as a number, or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(Weight),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<Weight> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Girth::Finite(_))
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g),
            Girth::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Girth {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(Weight),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(g) => Ok(Girth::Finite(g)),
            Repr::Str(s) if s == "inf" => Ok(Girth::Infinite),
            Repr::Str(s) => Err(de::Error::custom(format!("invalid girth `{s}`"))),
        }
    }
}

impl std::str::FromStr for Girth {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "inf" {
            return Ok(Girth::Infinite);
        }
        s.parse()
            .map(Girth::Finite)
            .map_err(|_| format!("invalid girth `{s}`"))
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

fn acyclic_without(g: &Graph, removed: &HashSet<VertexId>) -> bool {
    let idx = g.indexed();
    let mut ds = DisjointSets::new(idx.len());
    for e in g.edges() {
        if removed.contains(&e.0) || removed.contains(&e.1) {
            continue;
        }
        if !ds.union(idx.index[&e.0], idx.index[&e.1]) {
            return false;
        }
    }
    true
}

pub fn is_forest(g: &Graph) -> bool {
    acyclic_without(g, &HashSet::new())
}

/// True iff `g - s` is acyclic. Every member of `s` must be a vertex of `g`.
pub fn validate_fvs<'a>(g: &Graph, s: impl IntoIterator<Item = &'a VertexId>) -> Result<bool> {
    let mut removed = HashSet::new();
    for &v in s {
        if !g.contains(v) {
            return Err(Error::MemberNotInGraph(v));
        }
        removed.insert(v);
    }
    Ok(acyclic_without(g, &removed))
}

/// Shortest cycle by edge count, as a vertex sequence. `None` for forests.
pub fn shortest_cycle(g: &Graph) -> Option<Vec<VertexId>> {
    let idx = g.indexed();
    let n = idx.len();
    let mut best: Option<(usize, usize, usize, Vec<usize>)> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if let Some((len, ..)) = &best {
            if *len == 3 {
                break;
            }
        }
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if let Some((len, ..)) = &best {
                if 2 * dist[u] + 1 >= *len {
                    break;
                }
            }
            for &(v, _) in &idx.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    let len = dist[u] + dist[v] + 1;
                    if best.as_ref().is_none_or(|b| len < b.0) {
                        best = Some((len, u, v, parent.clone()));
                    }
                }
            }
        }
    }
    let (_, u, v, parent) = best?;
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pu = path_to_root(u);
    let pv = path_to_root(v);
    // Trim the shared tail (common ancestors) except the lowest one.
    let mut i = pu.len();
    let mut j = pv.len();
    while i > 1 && j > 1 && pu[i - 2] == pv[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<VertexId> = pu[..i].iter().map(|&x| idx.ids[x]).collect();
    cycle.extend(pv[..j - 1].iter().rev().map(|&x| idx.ids[x]));
    Some(cycle)
}

/// Length of a shortest cycle, ignoring weights.
pub fn girth(g: &Graph) -> Girth {
    let idx = g.indexed();
    let n = idx.len();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if best == 3 {
            break;
        }
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &(v, _) in &idx.adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                } else if parent[u] != v {
                    best = best.min(dist[u] + dist[v] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best as Weight)
    }
}

/// Minimum total weight over all cycles. For every edge `uv` the cheapest
/// cycle through it is `w(uv)` plus a shortest `u`-`v` path avoiding `uv`.
pub fn weighted_girth(g: &Graph) -> Girth {
    let idx = g.indexed();
    let n = idx.len();
    let mut best = Weight::MAX;
    let mut dist = vec![Weight::MAX; n];
    for (e, w) in g.weighted_edges() {
        if w >= best {
            continue;
        }
        let (s, t) = (idx.index[&e.0], idx.index[&e.1]);
        let budget = best - w;
        dist.fill(Weight::MAX);
        dist[s] = 0;
        let mut heap = BinaryHeap::from([Reverse((0, s))]);
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            if u == t || d >= budget {
                break;
            }
            for &(v, wv) in &idx.adj[u] {
                if (u == s && v == t) || (u == t && v == s) {
                    continue;
                }
                let nd = d + wv;
                if nd < dist[v] {
                    dist[v] = nd;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        if dist[t] < budget {
            best = w + dist[t];
        }
    }
    if best == Weight::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}
