//! Feedback vertex sets of size at most `(n + 2) / 3` for 2-connected graphs
//! of maximum degree 3.
//!
//! The solver rewrites the graph with a fixed list of reductions. Each
//! reduction deletes a few vertices, reconnects their surroundings with new
//! edges and puts at most one vertex into the solution per three vertices
//! deleted. Rules are tried in order and the first match (smallest ids)
//! fires. Graphs with at most [`BASE_CASE_N`] vertices are solved exactly.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::certificate::{Bound, FvsCertificate, ReductionStep, RuleCase, RuleId};
use crate::error::{Error, Result};
use crate::graph::{is_two_connected, min_side_two_edge_cut, validate_fvs, Edge, Graph, VertexId};
use crate::oracle::{min_fvs_exact, DEFAULT_NODE_BUDGET};

/// Graphs this small go to the exact oracle.
pub const BASE_CASE_N: usize = 10;

/// A matched rule together with the rewrite it prescribes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RulePlan {
    pub rule: RuleId,
    pub case: RuleCase,
    pub matched: Vec<VertexId>,
    pub remove: Vec<VertexId>,
    pub add: Vec<Edge>,
    pub designated: Vec<VertexId>,
}

impl RulePlan {
    fn new(rule: RuleId, case: RuleCase, matched: Vec<VertexId>) -> Self {
        RulePlan {
            rule,
            case,
            matched,
            remove: Vec::new(),
            add: Vec::new(),
            designated: Vec::new(),
        }
    }

    fn remove(mut self, vs: &[VertexId]) -> Self {
        self.remove = vs.to_vec();
        self
    }

    fn add(mut self, es: &[(VertexId, VertexId)]) -> Self {
        self.add = es.iter().map(|&(a, b)| Edge::new(a, b)).collect();
        self
    }

    fn designate(mut self, vs: &[VertexId]) -> Self {
        self.designated = vs.to_vec();
        self
    }
}

/// Neighbors of `v` other than those in `skip`, ascending.
fn others(g: &Graph, v: VertexId, skip: &[VertexId]) -> Vec<VertexId> {
    g.neighbors(v).filter(|u| !skip.contains(u)).collect()
}

/// The unique neighbor of `v` outside `skip`.
fn third(g: &Graph, v: VertexId, skip: &[VertexId]) -> Option<VertexId> {
    let o = others(g, v, skip);
    (o.len() == 1).then(|| o[0])
}

fn match_degree2(g: &Graph) -> Option<RulePlan> {
    let v = g.vertices().find(|&v| g.degree(v) == 2)?;
    let nb = g.neighbor_vec(v);
    let (u, w) = (nb[0], nb[1]);
    if !g.has_edge(u, w) {
        return Some(
            RulePlan::new(RuleId::Degree2, RuleCase::Smooth, vec![u, v, w])
                .remove(&[v])
                .add(&[(u, w)]),
        );
    }
    let u1 = third(g, u, &[v, w])?;
    let w1 = third(g, w, &[v, u])?;
    if u1 == w1 {
        return None;
    }
    let matched = vec![u, v, w, u1, w1];
    let plan = if g.has_edge(u1, w1) {
        RulePlan::new(RuleId::Degree2, RuleCase::PendantTriangle, matched).remove(&[u, v, w])
    } else {
        RulePlan::new(RuleId::Degree2, RuleCase::PendantTriangleJoin, matched)
            .remove(&[u, v, w])
            .add(&[(u1, w1)])
    };
    Some(plan.designate(&[u]))
}

fn match_adjacent_triangles(g: &Graph) -> Option<RulePlan> {
    for e in g.edges() {
        let (x, y) = (e.0, e.1);
        let common = g.common_neighbors(x, y);
        if common.len() != 2 {
            continue;
        }
        let (z, z1) = (common[0], common[1]);
        if g.has_edge(z, z1) {
            continue;
        }
        let Some(v) = third(g, z, &[x, y]) else {
            continue;
        };
        return Some(
            RulePlan::new(
                RuleId::AdjacentTriangles,
                RuleCase::Only,
                vec![x, y, z, z1, v],
            )
            .remove(&[x, y, z])
            .add(&[(v, z1)])
            .designate(&[x]),
        );
    }
    None
}

fn match_triangle_square(g: &Graph) -> Option<RulePlan> {
    for e in g.edges() {
        for w in g.common_neighbors(e.0, e.1) {
            for (x, y) in [(e.0, e.1), (e.1, e.0)] {
                let (Some(z), Some(v)) = (third(g, x, &[y, w]), third(g, y, &[x, w])) else {
                    continue;
                };
                if z == v || !g.has_edge(z, v) {
                    continue;
                }
                let w1 = third(g, w, &[x, y]);
                let v1 = third(g, v, &[y, z]);
                if let (Some(w1), Some(v1)) = (w1, v1) {
                    if w1 == v1 {
                        // Common neighbor z' of v and w.
                        let z1 = w1;
                        let Some(z2) = third(g, z1, &[v, w]) else {
                            continue;
                        };
                        return Some(
                            RulePlan::new(
                                RuleId::TriangleSquare,
                                RuleCase::CommonNeighbor,
                                vec![x, y, w, z, v, z1, z2],
                            )
                            .remove(&[w, y, z1])
                            .add(&[(x, v), (v, z2)])
                            .designate(&[w]),
                        );
                    }
                }
                let Some(w1) = w1 else { continue };
                return Some(
                    RulePlan::new(
                        RuleId::TriangleSquare,
                        RuleCase::NoCommonNeighbor,
                        vec![x, y, w, z, v, w1],
                    )
                    .remove(&[x, y, w])
                    .add(&[(v, w1)])
                    .designate(&[x]),
                );
            }
        }
    }
    None
}

fn match_two_squares(g: &Graph) -> Option<RulePlan> {
    for v in g.vertices() {
        let mut seconds: BTreeSet<VertexId> = BTreeSet::new();
        for a in g.neighbors(v) {
            seconds.extend(g.neighbors(a).filter(|&b| b > v));
        }
        for x in seconds {
            if g.has_edge(v, x) {
                continue;
            }
            let common = g.common_neighbors(v, x);
            if common.len() != 3 {
                continue;
            }
            let thirds: Option<Vec<VertexId>> =
                common.iter().map(|&c| third(g, c, &[v, x])).collect();
            let Some(t) = thirds else { continue };
            if t[0] != t[1] && t[1] != t[2] && t[0] != t[2] {
                let (u, w, y) = (common[0], common[1], common[2]);
                return Some(
                    RulePlan::new(
                        RuleId::TwoSquares,
                        RuleCase::AllDistinct,
                        vec![u, v, w, x, y, t[0], t[1], t[2]],
                    )
                    .remove(&[u, v, w, y])
                    .add(&[(t[0], x), (t[1], x), (t[2], x)])
                    .designate(&[v]),
                );
            }
            if t[0] == t[1] && t[1] == t[2] {
                continue;
            }
            // Relabel so that u and y are the pair with a shared outer
            // neighbor and w is the odd one out.
            let (pu, pw, py) = if t[0] == t[1] {
                (0, 2, 1)
            } else if t[0] == t[2] {
                (0, 1, 2)
            } else {
                (1, 0, 2)
            };
            let (u, w, y) = (common[pu], common[pw], common[py]);
            let (u1, w1) = (t[pu], t[pw]);
            let Some(z) = third(g, u1, &[u, y]) else {
                continue;
            };
            let matched = vec![u, v, w, x, y, u1, w1, z];
            let removed = [u, v, w, x, y, u1];
            let plan = if g.has_edge(z, w1) || z == w1 {
                RulePlan::new(RuleId::TwoSquares, RuleCase::PairedOuter, matched).remove(&removed)
            } else {
                RulePlan::new(RuleId::TwoSquares, RuleCase::PairedOuterJoin, matched)
                    .remove(&removed)
                    .add(&[(z, w1)])
            };
            return Some(plan.designate(&[v, x]));
        }
    }
    None
}

fn match_two_edge_cut(g: &Graph) -> Option<RulePlan> {
    let cut = min_side_two_edge_cut(g).ok()??;
    let side1 = &cut.side1;
    let (v, u) = cut
        .edges
        .iter()
        .map(|e| {
            if side1.contains(&e.0) {
                (e.0, e.1)
            } else {
                (e.1, e.0)
            }
        })
        .min()?;
    let wx = others(g, v, &[u]);
    let [w, x] = wx[..] else { return None };
    if g.has_edge(w, x) {
        let x1 = third(g, x, &[v, w])?;
        return Some(
            RulePlan::new(
                RuleId::TwoEdgeCut,
                RuleCase::CutTriangle,
                vec![v, u, w, x, x1],
            )
            .remove(&[v, w, x])
            .add(&[(u, x1)])
            .designate(&[w]),
        );
    }
    let w01 = others(g, w, &[v]);
    let [w0, w1] = w01[..] else { return None };
    if g.has_edge(w0, w1) {
        let w0p = third(g, w0, &[w, w1])?;
        let w1p = third(g, w1, &[w, w0])?;
        return Some(
            RulePlan::new(
                RuleId::TwoEdgeCut,
                RuleCase::NeighborTriangle,
                vec![v, u, w, x, w0, w1, w0p, w1p],
            )
            .remove(&[w, w0, w1])
            .add(&[(w0p, w1p)])
            .designate(&[w]),
        );
    }
    let mut pairs = Vec::new();
    for c in [w0, w1] {
        let cc = others(g, c, &[w]);
        let [c0, c1] = cc[..] else { return None };
        if g.has_edge(c0, c1) {
            let c0p = third(g, c0, &[c, c1])?;
            let c1p = third(g, c1, &[c, c0])?;
            return Some(
                RulePlan::new(
                    RuleId::TwoEdgeCut,
                    RuleCase::SecondNeighborTriangle,
                    vec![v, u, w, x, c, c0, c1, c0p, c1p],
                )
                .remove(&[c, c0, c1])
                .add(&[(c0p, c1p)])
                .designate(&[c]),
            );
        }
        pairs.push((c0, c1));
    }
    let ((a0, a1), (b0, b1)) = (pairs[0], pairs[1]);
    Some(
        RulePlan::new(
            RuleId::TwoEdgeCut,
            RuleCase::CutGeneric,
            vec![v, u, w, x, w0, w1, a0, a1, b0, b1],
        )
        .remove(&[w, w0, w1])
        .add(&[(a0, a1), (b0, b1)])
        .designate(&[w]),
    )
}

fn match_triangle(g: &Graph) -> Option<RulePlan> {
    for u in g.vertices() {
        for v in g.neighbors(u).filter(|&v| v > u) {
            let Some(&w) = g.common_neighbors(u, v).iter().find(|&&w| w > v) else {
                continue;
            };
            let u1 = third(g, u, &[v, w])?;
            let v1 = third(g, v, &[u, w])?;
            return Some(
                RulePlan::new(RuleId::Triangle, RuleCase::Only, vec![u, v, w, u1, v1])
                    .remove(&[u, v, w])
                    .add(&[(u1, v1)])
                    .designate(&[w]),
            );
        }
    }
    None
}

fn match_generic(g: &Graph) -> Option<RulePlan> {
    let v = g.vertices().next()?;
    let nb = g.neighbor_vec(v);
    let (x, y) = (*nb.first()?, *nb.get(1)?);
    let xs = others(g, x, &[v]);
    let ys = others(g, y, &[v]);
    let (&[x0, x1], &[y0, y1]) = (&xs[..], &ys[..]) else {
        return None;
    };
    Some(
        RulePlan::new(
            RuleId::Generic,
            RuleCase::Only,
            vec![v, x, y, x0, x1, y0, y1],
        )
        .remove(&[v, x, y])
        .add(&[(x0, x1), (y0, y1)])
        .designate(&[v]),
    )
}

/// The first rule that matches, scanning rules in priority order and
/// candidate configurations by ascending ids.
pub fn find_rule(g: &Graph) -> Option<RulePlan> {
    match_degree2(g)
        .or_else(|| match_adjacent_triangles(g))
        .or_else(|| match_triangle_square(g))
        .or_else(|| match_two_squares(g))
        .or_else(|| match_two_edge_cut(g))
        .or_else(|| match_triangle(g))
        .or_else(|| match_generic(g))
}

/// Performs `plan` on `g` and checks that the result is again simple,
/// 2-connected, of maximum degree 3 and strictly smaller.
pub fn apply_rule(g: &Graph, plan: &RulePlan) -> Result<(Graph, ReductionStep)> {
    let broken = |msg: String| Error::InternalInvariantBroken(format!("{:?}: {msg}", plan.rule));
    let mut h = g.clone();
    let mut removed_edges: BTreeSet<Edge> = BTreeSet::new();
    for &v in &plan.remove {
        if !h.contains(v) {
            return Err(broken(format!("vertex {v} removed twice or missing")));
        }
        removed_edges.extend(h.neighbors(v).map(|u| Edge::new(u, v)));
        h.remove_vertex(v)?;
    }
    for e in &plan.add {
        h.add_edge(e.0, e.1)
            .map_err(|err| broken(format!("cannot add {e}: {err}")))?;
    }
    if h.n() >= g.n() {
        return Err(broken("vertex count did not drop".into()));
    }
    if h.max_degree() > 3 {
        return Err(broken("maximum degree exceeds 3".into()));
    }
    if !is_two_connected(&h) {
        return Err(broken("result is not 2-connected".into()));
    }
    let step = ReductionStep {
        rule: plan.rule,
        case: plan.case,
        matched: plan.matched.clone(),
        removed_vertices: plan.remove.clone(),
        added_vertices: Vec::new(),
        removed_edges: removed_edges.into_iter().collect(),
        added_edges: plan.add.clone(),
        designated: plan.designated.clone(),
    };
    Ok((h, step))
}

/// Exact solution for a small graph.
pub fn base_case(g: &Graph) -> Result<FvsCertificate> {
    if g.n() > BASE_CASE_N {
        return Err(Error::PreconditionViolated(format!(
            "base case needs at most {BASE_CASE_N} vertices, got {}",
            g.n()
        )));
    }
    let r = min_fvs_exact(g, DEFAULT_NODE_BUDGET)?;
    let mut step = ReductionStep::new(RuleId::Base, RuleCase::Only);
    step.matched = g.vertices().collect();
    step.removed_vertices = step.matched.clone();
    step.removed_edges = g.edges().collect();
    step.designated = r.witness.iter().copied().collect();
    Ok(FvsCertificate {
        set: r.witness,
        bound: Bound::cubic(g.n()),
        trace: vec![step],
        fallbacks: 0,
    })
}

fn check_class(g: &Graph) -> Result<()> {
    if g.max_degree() > 3 {
        return Err(Error::PreconditionViolated(format!(
            "maximum degree is {}, at most 3 required",
            g.max_degree()
        )));
    }
    if !is_two_connected(g) {
        return Err(Error::PreconditionViolated(
            "graph is not 2-connected".into(),
        ));
    }
    Ok(())
}

/// Feedback vertex set with `3|S| <= n + 2` for a 2-connected graph of
/// maximum degree 3.
pub fn solve_cubic(g: &Graph) -> Result<FvsCertificate> {
    check_class(g)?;
    let mut cur = g.clone();
    let mut set = BTreeSet::new();
    let mut trace = Vec::new();
    let mut fallbacks = 0;
    while cur.n() > BASE_CASE_N {
        let applied = find_rule(&cur)
            .ok_or_else(|| Error::InternalInvariantBroken("no rule matches".into()))
            .and_then(|plan| apply_rule(&cur, &plan));
        match applied {
            Ok((next, step)) => {
                set.extend(step.designated.iter().copied());
                trace.push(step);
                cur = next;
            }
            Err(Error::InternalInvariantBroken(_)) => {
                let r = min_fvs_exact(&cur, DEFAULT_NODE_BUDGET)?;
                let mut step = ReductionStep::new(RuleId::OracleFallback, RuleCase::Only);
                step.removed_vertices = cur.vertices().collect();
                step.designated = r.witness.iter().copied().collect();
                set.extend(r.witness);
                trace.push(step);
                fallbacks += 1;
                cur = Graph::new();
            }
            Err(e) => return Err(e),
        }
    }
    if !cur.is_empty() {
        let base = base_case(&cur)?;
        set.extend(base.set);
        trace.extend(base.trace);
    }
    let cert = FvsCertificate {
        set,
        bound: Bound::cubic(g.n()),
        trace,
        fallbacks,
    };
    if !validate_fvs(g, &cert.set)? {
        return Err(Error::InternalInvariantBroken(
            "lifted set is not a feedback vertex set".into(),
        ));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(&[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn prism() -> Graph {
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

    #[test]
    fn small_graphs_use_the_base_case() {
        let c = solve_cubic(&k4()).unwrap();
        assert_eq!(c.size(), 2);
        assert!(c.meets_bound());
        assert_eq!(c.trace.len(), 1);
        assert_eq!(solve_cubic(&prism()).unwrap().size(), 2);
    }

    #[test]
    fn rejects_out_of_class_inputs() {
        let path = Graph::from_edges(&[(0, 1), (1, 2)]).unwrap();
        assert!(matches!(
            solve_cubic(&path),
            Err(Error::PreconditionViolated(_))
        ));
        let mut k5 = vec![];
        for a in 0..5 {
            for b in a + 1..5 {
                k5.push((a, b));
            }
        }
        assert!(matches!(
            solve_cubic(&Graph::from_edges(&k5).unwrap()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn degree_two_rule_smooths() {
        let c12: Vec<(u32, u32)> = (0..12).map(|i| (i, (i + 1) % 12)).collect();
        let g = Graph::from_edges(&c12).unwrap();
        let plan = find_rule(&g).unwrap();
        assert_eq!((plan.rule, plan.case), (RuleId::Degree2, RuleCase::Smooth));
        let (h, step) = apply_rule(&g, &plan).unwrap();
        assert_eq!(h.n(), 11);
        assert!(step.designated.is_empty());
        let cert = solve_cubic(&g).unwrap();
        assert_eq!(cert.size(), 1);
    }

    #[test]
    fn adjacent_triangles_rule() {
        // Diamond x=0,y=1,z=2,z'=3 inside a larger ring.
        let mut e = vec![(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 4), (3, 11)];
        for i in 4..11 {
            e.push((i, i + 1));
        }
        e.extend([(4, 7), (5, 9), (6, 11), (8, 10)]);
        let g = Graph::from_edges(&e).unwrap();
        assert!(g.is_cubic(), "fixture must be cubic");
        let plan = find_rule(&g).unwrap();
        assert_eq!(plan.rule, RuleId::AdjacentTriangles);
        assert_eq!(plan.designated, vec![VertexId(0)]);
    }
}
