//! Feedback vertex sets of weight-certified size for plane graphs.
//!
//! For a plane graph whose cycles all weigh at least `g`, the solver returns
//! a set `S` with `3g|S| <= 4w(G)`. It reduces the graph with face mergers,
//! vertex splits and suppressions until a 2-connected cubic core remains,
//! which goes to [`crate::cubic::solve_cubic`]. The reductions form a tree;
//! the solution of each node is lifted back to its parent.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::certificate::{Bound, BoundKind, FvsCertificate, ReductionStep, RuleCase, RuleId};
use crate::cubic::solve_cubic;
use crate::embed::{
    apply_merger, doubled_potential, find_guaranteed_merger, mergeable_triples,
    split_high_degree_vertex, suppress_degree2_vertex, MergerSpec, PlaneGraph,
};
use crate::error::{Error, Result};
use crate::graph::{
    biconnected_components, girth, is_forest, is_two_connected, validate_fvs, weighted_girth, Edge,
    Girth, Graph, VertexId, Weight,
};
use crate::oracle::{min_fvs_exact, DEFAULT_NODE_BUDGET};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergerMode {
    /// Only mergers around a face with at most two vertices of degree >= 3.
    #[default]
    GuaranteedOnly,
    /// Any nice merger, tried before the guaranteed one. Applications are
    /// capped at the input's edge count, after which only guaranteed mergers
    /// are used.
    AnyNiceMerger,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Every cycle of the input must weigh at least `g`.
    pub g: Weight,
    /// Re-check the girth condition and the termination measure after every
    /// reduction.
    pub validate_every_step: bool,
    pub merger_mode: MergerMode,
}

impl SolverConfig {
    pub fn new(g: Weight) -> Self {
        SolverConfig {
            g,
            validate_every_step: false,
            merger_mode: MergerMode::GuaranteedOnly,
        }
    }

    pub fn debug(mut self) -> Self {
        self.validate_every_step = true;
        self
    }

    pub fn with_mode(mut self, mode: MergerMode) -> Self {
        self.merger_mode = mode;
        self
    }
}

/// How a node's solution is turned into its parent's.
#[derive(Clone, Copy, Debug)]
enum Lift {
    None,
    Add(VertexId),
    Split {
        w: VertexId,
        w_prime: VertexId,
        v: VertexId,
    },
}

struct Node {
    parent: Option<usize>,
    lift: Lift,
    acc: BTreeSet<VertexId>,
}

struct Solver<'a> {
    cfg: &'a SolverConfig,
    nodes: Vec<Node>,
    pending: Vec<(usize, PlaneGraph)>,
    trace: Vec<ReductionStep>,
    fallbacks: usize,
    nice_mergers_left: usize,
}

fn broken(msg: impl Into<String>) -> Error {
    Error::InternalInvariantBroken(msg.into())
}

impl Solver<'_> {
    fn child(&mut self, parent: usize, lift: Lift, pg: PlaneGraph) {
        self.nodes.push(Node {
            parent: Some(parent),
            lift,
            acc: BTreeSet::new(),
        });
        self.pending.push((self.nodes.len() - 1, pg));
    }

    fn check_child(&self, before: &Graph, after: &Graph, weight_drops: bool) -> Result<()> {
        if !self.cfg.validate_every_step {
            return Ok(());
        }
        if let Girth::Finite(w) = weighted_girth(after) {
            if w < self.cfg.g {
                return Err(broken(format!(
                    "a cycle of weight {w} < {} appeared",
                    self.cfg.g
                )));
            }
        }
        let (wb, wa) = (before.total_weight(), after.total_weight());
        let ok = if weight_drops {
            wa < wb
        } else {
            wa == wb && doubled_potential(after) + 1 == doubled_potential(before)
        };
        if !ok {
            return Err(broken("termination measure did not decrease"));
        }
        Ok(())
    }

    fn record(&mut self, rule: RuleId, f: impl FnOnce(&mut ReductionStep)) {
        let mut step = ReductionStep::new(rule, RuleCase::Only);
        f(&mut step);
        self.trace.push(step);
    }

    fn pick_merger(&mut self, pg: &PlaneGraph) -> Result<Option<MergerSpec>> {
        if self.cfg.merger_mode == MergerMode::AnyNiceMerger && self.nice_mergers_left > 0 {
            if let Some(spec) = mergeable_triples(pg)
                .into_iter()
                .find(|s| s.is_nice(self.cfg.g))
            {
                self.nice_mergers_left -= 1;
                return Ok(Some(spec));
            }
        }
        find_guaranteed_merger(pg, self.cfg.g)
    }

    fn process(&mut self, id: usize, pg: PlaneGraph) -> Result<()> {
        // P0: leaves lie on no cycle.
        let (mut graph, mut rot) = pg.into_parts();
        let mut pruned = Vec::new();
        loop {
            let low: Vec<VertexId> = graph.vertices().filter(|&v| graph.degree(v) <= 1).collect();
            if low.is_empty() {
                break;
            }
            for v in low {
                graph.remove_vertex(v)?;
                rot.remove_vertex(v);
                pruned.push(v);
            }
        }
        if !pruned.is_empty() {
            self.record(RuleId::Prune, |s| s.removed_vertices = pruned);
        }
        if is_forest(&graph) {
            return Ok(());
        }
        let pg = PlaneGraph::new(graph, rot)?;
        let graph = pg.graph();

        // P1: solve blocks separately.
        if !is_two_connected(graph) {
            let blocks: Vec<Vec<Edge>> = biconnected_components(graph)
                .into_iter()
                .filter(|b| b.len() >= 3)
                .collect();
            self.record(RuleId::Decompose, |s| {
                s.matched = crate::graph::cut_vertices(graph);
            });
            for block in blocks {
                let sub = graph.edge_subgraph(&block);
                let rot = pg.rotation().restricted_to(&sub);
                self.child(id, Lift::None, PlaneGraph::new(sub, rot)?);
            }
            return Ok(());
        }

        // P2: a single cycle needs one vertex; otherwise merge faces.
        if graph.m() == graph.n() {
            let v = graph.vertices().next().unwrap();
            self.nodes[id].acc.insert(v);
            self.record(RuleId::SingleCycle, |s| {
                s.matched = graph.vertices().collect();
                s.designated = vec![v];
            });
            return Ok(());
        }
        if let Some(spec) = self.pick_merger(&pg)? {
            let next = apply_merger(&pg, &spec)?;
            self.check_child(graph, next.graph(), true)?;
            let removed_vertices: Vec<VertexId> = graph
                .vertices()
                .filter(|&v| !next.graph().contains(v))
                .collect();
            self.record(RuleId::Merge, |s| {
                s.matched = vec![spec.crucial];
                s.removed_vertices = removed_vertices;
                s.removed_edges = spec.removed_edges.clone();
                s.designated = vec![spec.crucial];
            });
            self.child(id, Lift::Add(spec.crucial), next);
            return Ok(());
        }

        // P3: split a vertex of maximum degree.
        if graph.max_degree() >= 4 {
            let d = graph.max_degree();
            let v = graph.vertices().find(|&v| graph.degree(v) == d).unwrap();
            let (next, map) = split_high_degree_vertex(&pg, v)?;
            self.check_child(graph, next.graph(), false)?;
            self.record(RuleId::Split, |s| {
                s.matched = vec![v];
                s.removed_vertices = vec![v];
                s.added_vertices = vec![map.w, map.w_prime];
                s.added_edges = vec![Edge::new(map.w, map.w_prime)];
            });
            self.child(
                id,
                Lift::Split {
                    w: map.w,
                    w_prime: map.w_prime,
                    v,
                },
                next,
            );
            return Ok(());
        }

        // P4: suppress a vertex of degree 2.
        if let Some(v) = graph.vertices().find(|&v| graph.degree(v) == 2) {
            let next = match suppress_degree2_vertex(&pg, v) {
                Ok(next) => next,
                Err(e @ Error::WouldCreateParallelEdge { .. }) => {
                    return Err(broken(format!("suppression out of order: {e}")))
                }
                Err(e) => return Err(e),
            };
            self.check_child(graph, next.graph(), false)?;
            let nb = graph.neighbor_vec(v);
            self.record(RuleId::Suppress, |s| {
                s.matched = vec![nb[0], v, nb[1]];
                s.removed_vertices = vec![v];
                s.added_edges = vec![Edge::new(nb[0], nb[1])];
            });
            self.child(id, Lift::None, next);
            return Ok(());
        }

        // P5: 2-connected plane cubic core.
        let cert = solve_cubic(graph)?;
        self.fallbacks += cert.fallbacks;
        // 3|S| <= n + 2 = 2f - 2 and g f <= 2w give 3g|S| <= 4w.
        let f = pg.faces().len() as u128;
        let (n, w, g) = (
            graph.n() as u128,
            graph.total_weight() as u128,
            self.cfg.g as u128,
        );
        let size = cert.size() as u128;
        if !(n + 4 == 2 * f && g * f <= 2 * w && 3 * g * size <= 4 * w) {
            return Err(broken("cubic core bound chain failed"));
        }
        self.record(RuleId::CubicCore, |s| {
            s.matched = graph.vertices().collect();
            s.designated = cert.set.iter().copied().collect();
        });
        self.trace.extend(cert.trace);
        self.nodes[id].acc.extend(cert.set);
        Ok(())
    }

    fn run(mut self, pg: &PlaneGraph) -> Result<(BTreeSet<VertexId>, Vec<ReductionStep>, usize)> {
        self.nodes.push(Node {
            parent: None,
            lift: Lift::None,
            acc: BTreeSet::new(),
        });
        self.pending.push((0, pg.clone()));
        while let Some((id, g)) = self.pending.pop() {
            self.process(id, g)?;
        }
        for i in (0..self.nodes.len()).rev() {
            let mut acc = std::mem::take(&mut self.nodes[i].acc);
            match self.nodes[i].lift {
                Lift::None => {}
                Lift::Add(v) => {
                    acc.insert(v);
                }
                Lift::Split { w, w_prime, v } => {
                    let hit = acc.remove(&w) | acc.remove(&w_prime);
                    if hit {
                        acc.insert(v);
                    }
                }
            }
            match self.nodes[i].parent {
                Some(p) => self.nodes[p].acc.extend(acc),
                None => self.nodes[i].acc = acc,
            }
        }
        let set = std::mem::take(&mut self.nodes[0].acc);
        Ok((set, self.trace, self.fallbacks))
    }
}

/// Feedback vertex set with `3g|S| <= 4w(G)` for a plane graph whose cycles
/// all weigh at least `cfg.g`.
pub fn solve_planar_weighted(pg: &PlaneGraph, cfg: &SolverConfig) -> Result<FvsCertificate> {
    if cfg.g < 3 {
        return Err(Error::PreconditionViolated(format!(
            "g must be at least 3, got {}",
            cfg.g
        )));
    }
    let g = pg.graph();
    if let Girth::Finite(w) = weighted_girth(g) {
        if w < cfg.g {
            return Err(Error::PreconditionViolated(format!(
                "a cycle weighs {w}, less than g = {}",
                cfg.g
            )));
        }
    }
    let solver = Solver {
        cfg,
        nodes: Vec::new(),
        pending: Vec::new(),
        trace: Vec::new(),
        fallbacks: 0,
        nice_mergers_left: g.m(),
    };
    let (set, trace, fallbacks) = solver.run(pg)?;
    let cert = FvsCertificate {
        set,
        bound: Bound::planar_weighted(g.total_weight(), cfg.g),
        trace,
        fallbacks,
    };
    if !validate_fvs(g, &cert.set)? {
        return Err(broken("lifted set is not a feedback vertex set"));
    }
    if !cert.meets_bound() {
        return Err(broken("certificate exceeds 4w/3g"));
    }
    Ok(cert)
}

/// Unit weights and `g` = girth: a set with `3g|S| <= 4m`.
pub fn solve_planar_unweighted(pg: &PlaneGraph) -> Result<FvsCertificate> {
    let g = pg.graph();
    let Girth::Finite(gi) = girth(g) else {
        return Ok(FvsCertificate {
            set: BTreeSet::new(),
            bound: Bound::new(BoundKind::Planar4mOver3g, 0, 1),
            trace: Vec::new(),
            fallbacks: 0,
        });
    };
    let unit = PlaneGraph::new(g.unit_weighted(), pg.rotation().clone())?;
    let mut cert = solve_planar_weighted(&unit, &SolverConfig::new(gi))?;
    cert.bound = Bound::planar_unweighted(g.m(), gi);
    Ok(cert)
}

/// Repeatedly deletes the vertex touching the most distinct faces, which
/// lowers the face count by at least one each time. Certified against
/// `2w(G)/g`; `g` must not exceed the weighted girth.
pub fn trivial_baseline(pg: &PlaneGraph, g: Weight) -> Result<FvsCertificate> {
    let original = pg.graph();
    if g == 0 {
        return Err(Error::PreconditionViolated("g must be positive".into()));
    }
    if let Girth::Finite(w) = weighted_girth(original) {
        if w < g {
            return Err(Error::PreconditionViolated(format!(
                "a cycle weighs {w}, less than g = {g}"
            )));
        }
    }
    let (mut graph, mut rot) = pg.clone().into_parts();
    let mut set = BTreeSet::new();
    let mut trace = Vec::new();
    loop {
        let low: Vec<VertexId> = graph.vertices().filter(|&v| graph.degree(v) <= 1).collect();
        if !low.is_empty() {
            for v in low {
                graph.remove_vertex(v)?;
                rot.remove_vertex(v);
            }
            continue;
        }
        if is_forest(&graph) {
            break;
        }
        let cur = PlaneGraph::new(graph, rot)?;
        let v = cur
            .graph()
            .vertices()
            .max_by_key(|&v| (cur.faces_around(v).len(), std::cmp::Reverse(v)))
            .unwrap();
        let mut step = ReductionStep::new(RuleId::FaceGreedy, RuleCase::Only);
        step.matched = vec![v];
        step.removed_vertices = vec![v];
        step.designated = vec![v];
        trace.push(step);
        set.insert(v);
        (graph, rot) = cur.into_parts();
        graph.remove_vertex(v)?;
        rot.remove_vertex(v);
    }
    let cert = FvsCertificate {
        set,
        bound: Bound::trivial(original.total_weight(), g),
        trace,
        fallbacks: 0,
    };
    if !validate_fvs(original, &cert.set)? {
        return Err(broken("face-greedy set is not a feedback vertex set"));
    }
    if !cert.meets_bound() {
        return Err(broken("face-greedy set exceeds 2w/g"));
    }
    Ok(cert)
}

/// Exact non-negative rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        let d = num.gcd(&den).max(1);
        Ratio {
            num: num / d,
            den: den / d,
        }
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// `m/g`, `4m/3g` and `2m/g` for a graph with a cycle; all zero for forests.
pub fn bound_ratios(g: &Graph) -> (Ratio, Ratio, Ratio) {
    match girth(g) {
        Girth::Finite(gi) => {
            let m = g.m() as u64;
            (
                Ratio::new(m, gi),
                Ratio::new(4 * m, 3 * gi),
                Ratio::new(2 * m, gi),
            )
        }
        Girth::Infinite => (Ratio::new(0, 1), Ratio::new(0, 1), Ratio::new(0, 1)),
    }
}

/// Optimum against the `m/g`, `4m/3g` and `2m/g` values and what the two
/// constructive procedures achieve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapReport {
    pub n: usize,
    pub m: usize,
    pub girth: Girth,
    pub phi: usize,
    pub m_over_g: Ratio,
    pub four_m_over_3g: Ratio,
    pub two_m_over_g: Ratio,
    pub planar_size: usize,
    pub trivial_size: usize,
}

impl GapReport {
    /// `phi <= m/g`.
    pub fn optimum_within_m_over_g(&self) -> bool {
        (self.phi as u128) * (self.m_over_g.den as u128) <= self.m_over_g.num as u128
    }
}

/// Default vertex limit for [`conjecture_gap_report`].
pub const GAP_REPORT_MAX_N: usize = 20;

/// Compares the exact optimum (unit weights) with the three girth bounds.
pub fn conjecture_gap_report(pg: &PlaneGraph, max_n: usize) -> Result<GapReport> {
    let g = pg.graph();
    if g.n() > max_n {
        return Err(Error::OracleTooLarge {
            n: g.n(),
            max: max_n,
        });
    }
    let exact = min_fvs_exact(g, DEFAULT_NODE_BUDGET)?;
    if exact.node_budget_hit {
        return Err(Error::OracleTooLarge {
            n: g.n(),
            max: max_n,
        });
    }
    let gi = girth(g);
    let (m_over_g, four_m_over_3g, two_m_over_g) = bound_ratios(g);
    let planar = solve_planar_unweighted(pg)?;
    let trivial = match gi {
        Girth::Finite(gv) => {
            let unit = PlaneGraph::new(g.unit_weighted(), pg.rotation().clone())?;
            trivial_baseline(&unit, gv)?.size()
        }
        Girth::Infinite => 0,
    };
    Ok(GapReport {
        n: g.n(),
        m: g.m(),
        girth: gi,
        phi: exact.phi,
        m_over_g,
        four_m_over_3g,
        two_m_over_g,
        planar_size: planar.size(),
        trivial_size: trivial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(edges: &[(u32, u32)]) -> PlaneGraph {
        PlaneGraph::embedded(Graph::from_edges(edges).unwrap()).unwrap()
    }

    #[test]
    fn single_cycle_takes_smallest_vertex() {
        let c7: Vec<(u32, u32)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        let cert = solve_planar_unweighted(&plane(&c7)).unwrap();
        assert_eq!(cert.set, BTreeSet::from([VertexId(0)]));
        assert_eq!((cert.bound.num, cert.bound.den), (28, 21));
    }

    #[test]
    fn forest_gives_empty_set() {
        let cert = solve_planar_unweighted(&plane(&[(0, 1), (1, 2)])).unwrap();
        assert!(cert.set.is_empty());
        assert!(cert.meets_bound());
    }

    #[test]
    fn rejects_light_cycles() {
        let pg = plane(&[(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(
            solve_planar_weighted(&pg, &SolverConfig::new(4)),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            solve_planar_weighted(&pg, &SolverConfig::new(2)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn wheel_uses_split_and_merge() {
        let mut w = vec![];
        for i in 1..=6 {
            w.push((0, i));
            w.push((i, i % 6 + 1));
        }
        let pg = plane(&w);
        let cert = solve_planar_weighted(&pg, &SolverConfig::new(3).debug()).unwrap();
        assert!(cert.verify(pg.graph()).unwrap());
        let base = trivial_baseline(&pg, 3).unwrap();
        assert!(base.verify(pg.graph()).unwrap());
    }

    #[test]
    fn ratio_display() {
        assert_eq!(Ratio::new(40, 15).to_string(), "8/3");
        assert_eq!(Ratio::new(30, 5).to_string(), "6");
    }
}
